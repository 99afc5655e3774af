#!/usr/bin/env python3
"""
SEAN Simulator - One-Click Launcher
Generates a synthetic dataset when needed and runs the simulation on it
"""

import sys
import argparse
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent))

from src.exploration import SelectionMode
from src.main import main as cli
from src.persistence import read_metrics


DEFAULT_DATA = Path("data/synthetic")
DEFAULT_RESULTS = Path("results")


def print_header(text):
    """Print formatted header"""
    print("\n" + "=" * 60)
    print(f"  {text}")
    print("=" * 60 + "\n")


def ensure_dataset(data_dir, seed=None):
    """Generate the synthetic dataset unless it already exists"""
    if (Path(data_dir) / "graph.tsv").exists():
        return 0
    print_header("Generating Synthetic Dataset")
    argv = ["generate", "--out", str(data_dir)]
    if seed is not None:
        argv += ["--seed", str(seed)]
    return cli(argv)


def run_simulation(data_dir, out_dir, mode=None, seed=None, fresh=False):
    """Run one simulation"""
    print_header(f"Running Simulation ({mode or 'configured mode'})")
    argv = ["run", "--data", str(data_dir), "--out", str(out_dir)]
    if mode:
        argv += ["--mode", mode]
    if seed is not None:
        argv += ["--seed", str(seed)]
    if fresh:
        argv.append("--fresh")
    return cli(argv)


def compare_modes(data_dir, out_root, seed=None, fresh=False):
    """Run every selection mode on the same data and print the period averages"""
    results = {}
    for mode in SelectionMode:
        out_dir = Path(out_root) / mode.value
        code = run_simulation(data_dir, out_dir, mode.value, seed, fresh)
        if code != 0:
            return code
        frame = read_metrics(out_dir / "metrics.csv")
        results[mode.value] = frame[frame["day"] == "avg"].iloc[0]

    print_header("Period Averages")
    print(f"   {'mode':15s} {'AUC':>8s} {'F1':>8s} {'Gini':>8s} {'C&C':>8s}")
    for mode, row in results.items():
        auc = f"{float(row['auc']):.4f}" if row["auc"] else "n/a"
        print(f"   {mode:15s} {auc:>8s} {float(row['f1']):8.4f} "
              f"{float(row['gini']):8.4f} {float(row['cc']):8.4f}")
    return 0


def main():
    """Main entry point"""
    parser = argparse.ArgumentParser(
        description='SEAN Simulator - One-Click Launcher',
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python run.py                          Generate data (if needed) and run
  python run.py --mode one_hop           Run a baseline selection mode
  python run.py --compare                Run every selection mode
  python run.py --data my_dataset        Use an existing dataset directory
  python run.py --fresh                  Ignore existing checkpoints
        """
    )

    parser.add_argument('--data', default=str(DEFAULT_DATA),
                       help=f'Dataset directory (default: {DEFAULT_DATA})')
    parser.add_argument('--out', default=str(DEFAULT_RESULTS),
                       help=f'Results directory (default: {DEFAULT_RESULTS})')
    parser.add_argument('--mode', choices=[m.value for m in SelectionMode],
                       help='Friend selection mode')
    parser.add_argument('--seed', type=int, help='Random seed')
    parser.add_argument('--compare', action='store_true',
                       help='Run all selection modes and compare')
    parser.add_argument('--fresh', action='store_true',
                       help='Start over instead of resuming')

    args = parser.parse_args()

    try:
        code = ensure_dataset(args.data, args.seed)
        if code != 0:
            sys.exit(code)

        if args.compare:
            code = compare_modes(args.data, args.out, args.seed, args.fresh)
        else:
            out_dir = Path(args.out) / (args.mode or "default")
            code = run_simulation(args.data, out_dir, args.mode, args.seed, args.fresh)
        sys.exit(code)

    except KeyboardInterrupt:
        print("\n\n⏹️  Cancelled by user")
        sys.exit(0)


if __name__ == "__main__":
    main()
