"""
Main Entry Point for the SEAN Simulator
"""

import argparse
import dataclasses
import logging
import sys
from pathlib import Path
from typing import List, Optional

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src import __version__
from src.exceptions import ConfigError, DataError, SeanError
from src.exploration import SelectionMode
from src.graph import build_activity_graph, pagerank
from src.metrics import PredictionLog, aggregate_period, day_metrics
from src.persistence import write_metrics
from src.settings import RunConfig, SyntheticSpec, load_config, log_config
from src.simulation import Simulator, generate_synthetic, load_dataset
from src.utils import setup_logging

DEFAULT_RUN_CONFIG = Path('config/run.yaml')
DEFAULT_SYNTHETIC_CONFIG = Path('config/synthetic.yaml')

logger = logging.getLogger('src.main')


def _resolve_config(path: Optional[str], default: Path, kind: str):
    """Explicit paths must exist; the default file is optional"""
    if path is not None:
        return load_config(path, kind)
    if default.exists():
        return load_config(default, kind)
    return RunConfig() if kind == 'run' else SyntheticSpec()


def _run_config(args) -> RunConfig:
    cfg = _resolve_config(args.config, DEFAULT_RUN_CONFIG, 'run')
    overrides = {}
    if args.seed is not None:
        overrides['seed'] = args.seed
    if getattr(args, 'mode', None):
        overrides['selection_mode'] = SelectionMode(args.mode)
    return dataclasses.replace(cfg, **overrides) if overrides else cfg


def cmd_generate(args) -> int:
    spec = _resolve_config(args.config, DEFAULT_SYNTHETIC_CONFIG, 'synthetic')
    if args.seed is not None:
        spec = dataclasses.replace(spec, seed=args.seed)
    setup_logging({'file_path': None})
    logger.info("Synthetic dataset settings:")
    log_config(spec)
    out = generate_synthetic(spec, args.out)
    print(f"Dataset written to {out}")
    return 0


def cmd_run(args) -> int:
    cfg = _run_config(args)
    setup_logging(cfg.logging)
    logger.info("=" * 60)
    logger.info(f"SEAN simulator {__version__}")
    logger.info("=" * 60)
    log_config(cfg)

    data = load_dataset(args.data)
    simulator = Simulator(cfg, data, out_dir=args.out)
    rows, average = simulator.run_period(resume=not args.fresh)

    print(f"\nTest days: {len(rows)}")
    if average.auc is not None:
        print(f"  AUC:  {average.auc:.4f}")
    print(f"  F1:   {average.f1:.4f}")
    print(f"  Gini: {average.gini:.4f}")
    print(f"  C&C:  {average.cc:.4f}")
    print(f"Outputs in {args.out}")
    return 0


def cmd_explore(args) -> int:
    cfg = _run_config(args)
    setup_logging(dict(cfg.logging, file_path=None))
    data = load_dataset(args.data)
    simulator = Simulator(cfg, data, out_dir=args.out)
    selection = simulator.explore(args.user, args.day)

    print(f"Friend paths for {selection.origin} on day {args.day} ({cfg.selection_mode.value}):")
    for b, path in enumerate(selection.paths, start=1):
        print(f"  {b}: {' -> '.join(path) if path else '(empty)'}")
    if selection.stranded:
        print("  warning: user has no out-neighbours")
    return 0


def cmd_metrics(args) -> int:
    setup_logging({'file_path': None, 'level': 'WARNING'})
    log = PredictionLog.read_csv(args.log)
    data = load_dataset(args.data)
    rows = [day_metrics(day, log.for_day(day), data.docs, args.threshold) for day in log.days()]
    average = aggregate_period(rows)
    if args.out:
        write_metrics(rows, args.out, average=average)
    for row in rows + [average]:
        auc = f"{row.auc:.6f}" if row.auc is not None else ''
        print(f"{row.day},{auc},{row.f1:.6f},{row.gini:.6f},{row.cc:.6f}")
    return 0


def cmd_pagerank(args) -> int:
    cfg = _run_config(args)
    setup_logging({'file_path': None, 'level': 'WARNING'})
    data = load_dataset(args.data)
    if args.day is None:
        scores = pagerank(data.graph.edges(), data.graph.nodes, cfg.pagerank_config())
    else:
        activity = build_activity_graph(data.logs_on(args.day), data.docs, day=args.day)
        nodes = set(data.graph.nodes).union(*activity.edges)
        scores = pagerank(activity.edges, nodes, cfg.pagerank_config())

    ranked = sorted(scores.items(), key=lambda item: (-item[1], item[0]))
    lines = [f"{user}\t{score:.10f}" for user, score in ranked]
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text('\n'.join(lines) + '\n', encoding='utf-8')
    else:
        for line in lines[:args.top]:
            print(line)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='SEAN social-explorative recommendation simulator')
    parser.add_argument('--version', action='version', version=__version__)
    sub = parser.add_subparsers(dest='command', required=True)

    def common(p, data=True):
        p.add_argument('--config', help='Path to configuration file (YAML or JSON)')
        p.add_argument('--seed', type=int, help='Override the configured seed')
        if data:
            p.add_argument('--data', required=True, help='Dataset directory')

    p = sub.add_parser('generate', help='Write a synthetic dataset')
    common(p, data=False)
    p.add_argument('--out', required=True, help='Destination directory')
    p.set_defaults(func=cmd_generate)

    modes = [m.value for m in SelectionMode]

    p = sub.add_parser('run', help='Run the day-by-day simulation')
    common(p)
    p.add_argument('--out', required=True, help='Output directory')
    p.add_argument('--mode', choices=modes, help='Override the friend selection mode')
    p.add_argument('--fresh', action='store_true', help='Ignore existing checkpoints')
    p.set_defaults(func=cmd_run)

    p = sub.add_parser('explore', help='Print the friend paths of one user on one day')
    common(p)
    p.add_argument('--out', help='Run directory whose checkpoints supply the state')
    p.add_argument('--mode', choices=modes, help='Override the friend selection mode')
    p.add_argument('--user', required=True, help='Origin user id')
    p.add_argument('--day', type=int, required=True, help='Day index')
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser('metrics', help='Recompute metrics from a prediction log')
    p.add_argument('--log', required=True, help='CSV with user,doc,score,label,day')
    p.add_argument('--data', required=True, help='Dataset directory (document authors)')
    p.add_argument('--out', help='metrics.csv destination')
    p.add_argument('--threshold', type=float, default=0.5, help='Decision threshold')
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser('pagerank', help='Dump social (or one day\'s activity) PageRank')
    common(p)
    p.add_argument('--day', type=int, help='Activity graph day; social graph when omitted')
    p.add_argument('--out', help='TSV destination; prints the top entries when omitted')
    p.add_argument('--top', type=int, default=20, help='Entries to print')
    p.set_defaults(func=cmd_pagerank)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code"""
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        print(f"Configuration error: {e}", file=sys.stderr)
        return ConfigError.exit_code
    except DataError as e:
        logger.error(f"Data error: {e}")
        print(f"Data error: {e}", file=sys.stderr)
        return DataError.exit_code
    except SeanError as e:
        logger.error(f"Runtime error: {e}")
        print(f"Runtime error: {e}", file=sys.stderr)
        return e.exit_code
    except Exception as e:
        logger.exception(f"Unexpected error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return SeanError.exit_code


if __name__ == "__main__":
    sys.exit(main())
