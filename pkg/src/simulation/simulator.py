"""
Simulation Orchestrator
Day-by-day friend selection, training, validation and next-day testing
"""

import logging
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Set, Tuple, Union

import numpy as np
import pandas as pd

from ..data import Sample
from ..exceptions import SeanError
from ..exploration import (
    ExplorationState, ExploitationStrategy, ExploitationValues, FriendSelection, SelectionMode,
    build_reward_cache, initialize_state, record_rs_f1, select_friends, update_visit_counts
)
from ..graph import build_activity_graph
from ..metrics import DayMetrics, PredictionLog, aggregate_period, day_metrics, f1
from ..model import AdamState, Example, ModelParams, init_params, predict_batch, train_batch
from ..persistence import (
    checkpoint_path, latest_checkpoint_day, load_checkpoint, save_checkpoint,
    save_state_json, state_path, write_manifest, write_metrics
)
from ..settings import RunConfig, config_to_mapping
from ..text import CorpusStats, build_corpus_stats, document_profile, embed_profile, tokenize, topk_from_counts
from ..utils import derive_rng, stable_key
from .dataset import Dataset
from .samples import build_day_samples, split_train_valid

logger = logging.getLogger(__name__)

METRICS_FILE = 'metrics.csv'
PREDICTIONS_FILE = 'predictions.csv'
MANIFEST_FILE = 'manifest.json'
CHECKPOINT_DIR = 'checkpoints'


@dataclass
class RunState:
    """Everything that carries over from one day to the next"""
    day: int                      # last completed training day
    state: ExplorationState
    params: ModelParams
    optimizer: AdamState
    rng: np.random.Generator
    rows: List[DayMetrics] = field(default_factory=list)
    predictions: List[pd.DataFrame] = field(default_factory=list)
    timings: List[Dict[str, Any]] = field(default_factory=list)


class LeakageAudit:
    """Proves that no test sample was ever trained on"""

    def __init__(self):
        self.trained: Set[Tuple[str, str, int]] = set()
        self.last_train_day = -1
        self.checked_days = 0

    def record_training(self, samples: Iterable[Sample]):
        for s in samples:
            self.trained.add((s.user, s.doc, s.day))
            self.last_train_day = max(self.last_train_day, s.day)

    def check_test(self, samples: Sequence[Sample]):
        overlap = [s for s in samples if (s.user, s.doc, s.day) in self.trained]
        early = [s for s in samples if s.day <= self.last_train_day]
        if overlap or early:
            raise SeanError(
                f"temporal leakage: {len(overlap)} test samples were trained on, "
                f"{len(early)} test samples are not after day {self.last_train_day}"
            )
        self.checked_days += 1


class _FeatureTable(Mapping[str, np.ndarray]):
    """Lazily embedded keyword matrices keyed by user or document id"""

    def __init__(self, build, keys: Iterable[str]):
        self._build = build
        self._keys = list(keys)
        self._cache: Dict[str, np.ndarray] = {}

    def __getitem__(self, key: str) -> np.ndarray:
        matrix = self._cache.get(key)
        if matrix is None:
            matrix = self._build(key)
            self._cache[key] = matrix
        return matrix

    def __iter__(self):
        return iter(self._keys)

    def __len__(self) -> int:
        return len(self._keys)


class Simulator:
    """Runs the rolling train-on-t, test-on-t+1 protocol"""

    def __init__(self, cfg: RunConfig, data: Dataset, out_dir: Optional[Union[str, Path]] = None):
        """
        Initialize the simulator

        Args:
            cfg: Run configuration
            data: Loaded dataset
            out_dir: Directory for metrics, predictions, checkpoints and manifest
        """
        self.cfg = cfg
        self.data = data
        self.out_dir = Path(out_dir) if out_dir is not None else None
        self.logger = logging.getLogger(__name__)

        self.bandit = cfg.bandit_config()
        if cfg.selection_mode is SelectionMode.NONE and self.bandit.beam_width != 1:
            self.logger.info("Selection mode 'none' runs with a single empty path per user")
        self.model_cfg = cfg.model_config(data.embeddings.dim)
        self.pagerank_cfg = cfg.pagerank_config()
        self.leakage = LeakageAudit()

        self._doc_terms: Dict[str, Counter] = {
            doc_id: Counter(tokenize(doc.text)) for doc_id, doc in data.docs.items()
        }
        self._history: Dict[str, Counter] = {}
        self._history_day: Optional[int] = None
        self._spr: Optional[Mapping[str, float]] = None
        self._day_set = set(data.days)

    # ------------------------------------------------------------------
    # Setup
    # ------------------------------------------------------------------

    def training_days(self) -> List[int]:
        """Consecutive training days t whose test day t+1 has data"""
        days = self.data.days
        if not days:
            return []
        start = self.cfg.start_day if self.cfg.start_day is not None else days[0]
        end = self.cfg.end_day if self.cfg.end_day is not None else days[-1] - 1
        result = []
        for t in range(start, end + 1):
            if t + 1 not in self._day_set:
                self.logger.warning(f"No logs for day {t + 1}; stopping after day {t - 1}")
                break
            result.append(t)
        return result

    def initial_run_state(self) -> RunState:
        """Fresh parameters, optimizer and randomly initialized visit counts"""
        state = initialize_state(self.data.graph, self.bandit, self.cfg.seed)
        if self.data.payouts is not None:
            for user, day, amount in zip(self.data.payouts['user'], self.data.payouts['day'],
                                         self.data.payouts['amount']):
                key = (user, int(day))
                state.payout[key] = state.payout.get(key, 0.0) + float(amount)

        params = init_params(self.model_cfg, self.cfg.seed)
        days = self.training_days()
        return RunState(
            day=(days[0] - 1) if days else -1,
            state=state,
            params=params,
            optimizer=AdamState.for_params(params),
            rng=derive_rng(self.cfg.seed, 'run')
        )

    # ------------------------------------------------------------------
    # Features
    # ------------------------------------------------------------------

    def _advance_history(self, day: int):
        """Fold positive logs up to ``day`` into per-user term counts"""
        if self._history_day is not None and day < self._history_day:
            self._history = {}
            self._history_day = None
        logs = self.data.logs
        low = self._history_day if self._history_day is not None else None
        mask = logs['day'] <= day
        if low is not None:
            mask &= logs['day'] > low
        for user, doc_id in zip(logs.loc[mask, 'user'], logs.loc[mask, 'doc_id']):
            self._history.setdefault(user, Counter()).update(self._doc_terms[doc_id])
        self._history_day = day

    def features(self, day: int) -> Tuple[CorpusStats, _FeatureTable, _FeatureTable]:
        """
        Corpus statistics and lazily built keyword matrices frozen at ``day``

        Args:
            day: Current training day

        Returns:
            (stats, user features, document features)
        """
        stats = build_corpus_stats(self.data.docs.values(), day=day)
        self._advance_history(day)
        table = self.data.embeddings
        empty = np.zeros((0, table.dim))

        def user_matrix(user: str) -> np.ndarray:
            counts = self._history.get(user)
            if not counts:
                return empty
            return embed_profile(topk_from_counts(counts, stats, self.cfg.user_keywords, owner=user), table)

        def doc_matrix(doc_id: str) -> np.ndarray:
            profile = document_profile(self.data.docs[doc_id], stats, self.cfg.doc_keywords)
            return embed_profile(profile, table)

        return (
            stats,
            _FeatureTable(user_matrix, self.data.graph.nodes),
            _FeatureTable(doc_matrix, self.data.docs.keys())
        )

    # ------------------------------------------------------------------
    # Friend selection
    # ------------------------------------------------------------------

    def exploitation_values(self, day: int, state: ExplorationState) -> Optional[ExploitationValues]:
        """Q_t lookup for the day; None when the selection mode ignores rewards"""
        if self.cfg.selection_mode not in (SelectionMode.MCTS, SelectionMode.EGREEDY):
            return None
        activity = None
        if self.cfg.strategy is ExploitationStrategy.DPR:
            activity = build_activity_graph(self.data.logs_on(day), self.data.docs, day=day)
        cache = build_reward_cache(
            self.cfg.strategy, state, self.data.graph, activity, self.pagerank_cfg,
            spr_scores=self._spr, has_payouts=self.data.payouts is not None
        )
        if cache.spr is not None:
            self._spr = cache.spr
        return ExploitationValues(self.cfg.strategy, state, cache)

    def select(self, users: Sequence[str], day: int, values: Optional[ExploitationValues],
               snapshot: ExplorationState) -> Dict[str, FriendSelection]:
        """
        Friend paths for each user against a read-only state snapshot

        Args:
            users: Origin users
            day: Current day (keys the per-user random streams)
            values: Exploitation lookup
            snapshot: State snapshot

        Returns:
            Mapping user -> FriendSelection
        """
        def one(user: str) -> FriendSelection:
            rng = derive_rng(self.cfg.seed, 'select', day, user)
            return select_friends(user, self.cfg.selection_mode, self.bandit, values,
                                  snapshot, self.data.graph, rng)

        if self.cfg.workers > 1 and len(users) > 1:
            with ThreadPoolExecutor(max_workers=self.cfg.workers) as pool:
                selections = list(pool.map(one, users))
        else:
            selections = [one(user) for user in users]
        return dict(zip(users, selections))

    # ------------------------------------------------------------------
    # Model passes
    # ------------------------------------------------------------------

    def _examples(self, samples: Sequence[Sample], selections: Mapping[str, FriendSelection]) -> List[Example]:
        return [
            Example(s.user, path, s.doc, s.label)
            for s in samples for path in selections[s.user].paths
        ]

    def train(self, run: RunState, samples: Sequence[Sample], selections: Mapping[str, FriendSelection],
              user_features, doc_features) -> float:
        """
        Epochs of minibatch Adam over every (sample, path) pair

        Returns:
            Mean loss of the last epoch
        """
        examples = self._examples(samples, selections)
        if not examples:
            return 0.0
        size = self.model_cfg.batch_size
        last_loss = 0.0
        for epoch in range(self.model_cfg.epochs_per_day):
            order = run.rng.permutation(len(examples))
            losses = []
            for start in range(0, len(examples), size):
                batch = [examples[i] for i in order[start:start + size]]
                run.params, loss = train_batch(batch, user_features, doc_features,
                                               run.params, run.optimizer, self.model_cfg)
                losses.append(loss * len(batch))
            last_loss = sum(losses) / len(examples)
            self.logger.debug(f"Epoch {epoch + 1}/{self.model_cfg.epochs_per_day}: loss {last_loss:.4f}")
        return last_loss

    def path_scores(self, params: ModelParams, samples: Sequence[Sample],
                    selections: Mapping[str, FriendSelection], user_features, doc_features) -> List[np.ndarray]:
        """
        Predictions of each sample under each of its user's B friend paths

        Returns:
            One array of length B per sample, aligned with ``samples``
        """
        if not samples:
            return []

        def chunk_scores(chunk: Sequence[Sample]) -> List[np.ndarray]:
            widths = [selections[s.user].beam_width for s in chunk]
            flat = predict_batch(self._examples(chunk, selections), user_features, doc_features,
                                 params, self.model_cfg)
            offsets = np.concatenate([[0], np.cumsum(widths)])
            return [np.asarray(flat[offsets[i]:offsets[i + 1]]) for i in range(len(chunk))]

        workers = self.cfg.workers
        if workers > 1 and len(samples) > workers:
            # Warm the lazy feature caches before fanning out
            for s in samples:
                user_features[s.user]
                doc_features[s.doc]
                for path in selections[s.user].paths:
                    for friend in path:
                        user_features[friend]
            chunks = [samples[i::workers] for i in range(workers)]
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(chunk_scores, chunks))
            result: List[np.ndarray] = [None] * len(samples)
            for i, part in enumerate(parts):
                result[i::workers] = part
            return result
        return chunk_scores(samples)

    def score(self, params: ModelParams, samples: Sequence[Sample],
              selections: Mapping[str, FriendSelection], user_features, doc_features) -> np.ndarray:
        """
        Mean prediction over each sample's B friend paths

        Returns:
            Scores aligned with ``samples``
        """
        per_path = self.path_scores(params, samples, selections, user_features, doc_features)
        return np.array([scores.mean() for scores in per_path])

    # ------------------------------------------------------------------
    # Day loop
    # ------------------------------------------------------------------

    def run_day(self, t: int, run: RunState) -> Tuple[PredictionLog, DayMetrics]:
        """
        Train on day t and test on day t+1

        Args:
            t: Training day
            run: Carried state (updated in place)

        Returns:
            (day t+1 PredictionLog, day t+1 metrics)
        """
        timings: Dict[str, Any] = {'day': t}
        tic = time.perf_counter()

        _, user_features, doc_features = self.features(t)
        samples = build_day_samples(t, self.data.logs, self.data.graph)
        train, valid = split_train_valid(samples, seed=stable_key(f"{self.cfg.seed}:{t}"))
        test = build_day_samples(t + 1, self.data.logs, self.data.graph)
        timings['features'] = time.perf_counter() - tic

        # Selection against a frozen snapshot; commits happen after training
        tic = time.perf_counter()
        run.state.day = t
        snapshot = run.state.snapshot()
        values = self.exploitation_values(t, snapshot)
        users = sorted({s.user for s in samples} | {s.user for s in test})
        selections = self.select(users, t, values, snapshot)
        timings['select'] = time.perf_counter() - tic

        tic = time.perf_counter()
        loss = self.train(run, train, selections, user_features, doc_features)
        self.leakage.record_training(train)
        timings['train'] = time.perf_counter() - tic

        for user in users:
            update_visit_counts(selections[user], run.state)

        tic = time.perf_counter()
        recorded = self.validate(run, valid, selections, user_features, doc_features)
        timings['validate'] = time.perf_counter() - tic

        tic = time.perf_counter()
        self.leakage.check_test(test)
        scores = self.score(run.params, test, selections, user_features, doc_features)
        log = PredictionLog.from_entries(
            (s.user, s.doc, float(score), s.label, s.day) for s, score in zip(test, scores)
        )
        metrics = day_metrics(t + 1, log, self.data.docs, self.cfg.threshold)
        timings['test'] = time.perf_counter() - tic

        run.timings.append(timings)
        self.logger.info(
            f"Day {t}: {len(train)} train / {len(valid)} valid samples, {len(users)} users, "
            f"loss {loss:.4f}, F1 recorded for {recorded}; day {t + 1}: "
            f"AUC {metrics.auc if metrics.auc is not None else float('nan'):.4f} "
            f"F1 {metrics.f1:.4f} Gini {metrics.gini:.4f} C&C {metrics.cc:.4f}"
        )
        phases = ', '.join(f"{k} {v:.2f}s" for k, v in timings.items() if k != 'day')
        self.logger.info(f"Day {t} timings: {phases}")
        return log, metrics

    def validate(self, run: RunState, valid: Sequence[Sample], selections: Mapping[str, FriendSelection],
                 user_features, doc_features) -> int:
        """
        Record each warm user's validation F1 into the rolling reward

        Every friend path is scored on its own; the recorded value is the
        mean of the per-path F1 values.

        Returns:
            Number of users recorded
        """
        if not valid:
            return 0
        per_path = self.path_scores(run.params, valid, selections, user_features, doc_features)
        by_user: Dict[str, List[int]] = {}
        for i, s in enumerate(valid):
            by_user.setdefault(s.user, []).append(i)

        recorded = 0
        for user in sorted(by_user):
            if user_features[user].shape[0] == 0:
                continue
            rows = by_user[user]
            scores = np.vstack([per_path[i] for i in rows])
            path_f1 = []
            for b in range(scores.shape[1]):
                log = PredictionLog.from_entries(
                    (valid[i].user, valid[i].doc, float(scores[k, b]), valid[i].label, valid[i].day)
                    for k, i in enumerate(rows)
                )
                path_f1.append(f1(log, self.cfg.threshold))
            record_rs_f1(user, float(np.mean(path_f1)), run.state)
            recorded += 1
        return recorded

    def run_period(self, resume: bool = True) -> Tuple[List[DayMetrics], DayMetrics]:
        """
        Iterate the day loop over the configured range

        Args:
            resume: Continue from the latest checkpoint in the output directory

        Returns:
            (daily metrics, period average)
        """
        run = self.load_run_state() if resume else None
        if run is None:
            run = self.initial_run_state()
        else:
            self.logger.info(f"Resuming after day {run.day}")

        config = config_to_mapping(self.cfg)
        for t in self.training_days():
            if t <= run.day:
                continue
            try:
                log, metrics = self.run_day(t, run)
            except SeanError as e:
                e.args = (f"day={t}: {e}",) + e.args[1:]
                raise
            except Exception as e:
                self.logger.error(f"day={t}: {type(e).__name__}: {e}")
                raise
            run.rows.append(metrics)
            run.predictions.append(log.frame)
            run.day = t
            if self.out_dir is not None:
                self.save_run_state(run)
                write_metrics(run.rows, self.out_dir / METRICS_FILE)

        average = aggregate_period(run.rows)
        if self.out_dir is not None:
            write_metrics(run.rows, self.out_dir / METRICS_FILE, average=average)
            self.write_predictions(run)
            write_manifest(
                self.out_dir / MANIFEST_FILE, config, self.data.fingerprint(), run.timings,
                extra={'test_days': [row.day for row in run.rows],
                       'leakage_checked_days': self.leakage.checked_days}
            )
        self.logger.info(
            f"Period average over {len(run.rows)} test days: F1 {average.f1:.4f} "
            f"Gini {average.gini:.4f} C&C {average.cc:.4f}"
        )
        return run.rows, average

    # ------------------------------------------------------------------
    # Persistence
    # ------------------------------------------------------------------

    def write_predictions(self, run: RunState):
        frames = [f for f in run.predictions if len(f)]
        if frames:
            PredictionLog(pd.concat(frames, ignore_index=True)).to_csv(self.out_dir / PREDICTIONS_FILE)
        else:
            PredictionLog().to_csv(self.out_dir / PREDICTIONS_FILE)

    def _resume_key(self) -> Dict[str, Any]:
        """Settings that must match for a checkpoint to be resumed"""
        key = config_to_mapping(self.cfg)
        for name in ('logging', 'workers', 'end_day'):
            key.pop(name, None)
        return key

    def save_run_state(self, run: RunState):
        """Checkpoint after a completed day"""
        directory = self.out_dir / CHECKPOINT_DIR
        payload = {
            'day': run.day,
            'config': self._resume_key(),
            'params': run.params.as_dict(),
            'adam_m': run.optimizer.m.as_dict(),
            'adam_v': run.optimizer.v.as_dict(),
            'adam_step': run.optimizer.step,
            'state': run.state.to_dict(),
            'rng_state': run.rng.bit_generator.state,
            'rows': run.rows,
            'predictions': run.predictions,
            'timings': run.timings,
            'leakage': (self.leakage.trained, self.leakage.last_train_day, self.leakage.checked_days),
        }
        save_checkpoint(checkpoint_path(directory, run.day), payload)
        save_state_json(state_path(directory, run.day), {
            'day': run.day,
            'exploration': run.state.to_dict(),
            'rng_state': run.rng.bit_generator.state,
            'metrics': [asdict(row) for row in run.rows],
        })

    def load_run_state(self) -> Optional[RunState]:
        """Latest checkpoint in the output directory, if any"""
        if self.out_dir is None:
            return None
        directory = self.out_dir / CHECKPOINT_DIR
        day = latest_checkpoint_day(directory)
        if day is None:
            return None
        payload = load_checkpoint(checkpoint_path(directory, day))
        if payload['config'] != self._resume_key():
            raise SeanError(f"checkpoint in {directory} was written with a different configuration")

        rng = np.random.default_rng()
        rng.bit_generator.state = payload['rng_state']
        params = ModelParams.from_dict(payload['params'])
        optimizer = AdamState(
            m=ModelParams.from_dict(payload['adam_m']),
            v=ModelParams.from_dict(payload['adam_v']),
            step=payload['adam_step']
        )
        self.leakage.trained, self.leakage.last_train_day, self.leakage.checked_days = payload['leakage']
        return RunState(
            day=payload['day'],
            state=ExplorationState.from_dict(payload['state']),
            params=params,
            optimizer=optimizer,
            rng=rng,
            rows=list(payload['rows']),
            predictions=list(payload['predictions']),
            timings=list(payload['timings'])
        )

    def explore(self, user: str, day: int) -> FriendSelection:
        """
        Friend paths for one user on one day

        Uses the checkpointed state of day - 1 when present in the output
        directory, otherwise the initial random state.
        """
        state = None
        if self.out_dir is not None:
            path = checkpoint_path(self.out_dir / CHECKPOINT_DIR, day - 1)
            if path.exists():
                state = ExplorationState.from_dict(load_checkpoint(path)['state'])
        if state is None:
            self.logger.info(f"No checkpoint before day {day}; using the initial state")
            state = self.initial_run_state().state
        state.day = day
        values = self.exploitation_values(day, state)
        return self.select([user], day, values, state)[user]
