"""
Tests for configuration loading and the command line
"""

import dataclasses
from pathlib import Path

import pytest

from src.exceptions import ConfigError
from src.exploration import ExploitationStrategy, SelectionMode
from src.main import main
from src.model import Kernel
from src.persistence import read_metrics
from src.settings import RunConfig, SyntheticSpec, config_from_mapping, load_config, save_config

from conftest import QUIET_LOGGING

CONFIG_DIR = Path(__file__).parent.parent / 'config'


class TestConfigFromMapping:

    def test_defaults(self):
        cfg = config_from_mapping({})
        assert cfg == RunConfig()
        assert cfg.selection_mode is SelectionMode.MCTS
        assert cfg.strategy is ExploitationStrategy.RS_F1

    def test_file_keys_and_enums(self):
        cfg = config_from_mapping({'lambda': 2, 'kernel': 'GESD', 'selection_mode': 'egreedy'})
        assert cfg.lam == 2.0 and isinstance(cfg.lam, float)
        assert cfg.kernel is Kernel.GESD
        assert cfg.selection_mode is SelectionMode.EGREEDY

    def test_unknown_key_is_named(self):
        with pytest.raises(ConfigError) as info:
            config_from_mapping({'beam_widht': 3})
        assert info.value.key == 'beam_widht'

    def test_type_errors(self):
        with pytest.raises(ConfigError) as info:
            config_from_mapping({'depth': 2.5})
        assert info.value.key == 'depth'
        with pytest.raises(ConfigError):
            config_from_mapping({'greedy_below_epsilon': 'yes'})
        with pytest.raises(ConfigError):
            config_from_mapping({'beam_width': True})

    def test_unknown_enum_value(self):
        with pytest.raises(ConfigError) as info:
            config_from_mapping({'strategy': 'clicks'})
        assert info.value.key == 'strategy'

    @pytest.mark.parametrize('key,value', [
        ('beam_width', 0), ('depth', 0), ('lambda', -1.0), ('epsilon', 1.5),
        ('threshold', 1.0), ('damping', 1.0), ('workers', 0),
    ])
    def test_range_errors_name_the_key(self, key, value):
        with pytest.raises(ConfigError) as info:
            config_from_mapping({key: value})
        assert info.value.key == key

    def test_day_range(self):
        with pytest.raises(ConfigError) as info:
            config_from_mapping({'start_day': 4, 'end_day': 2})
        assert info.value.key == 'end_day'

    def test_logging_merges_with_defaults(self):
        cfg = config_from_mapping({'logging': {'level': 'DEBUG'}})
        assert cfg.logging['level'] == 'DEBUG'
        assert cfg.logging['backup_count'] == 5

    def test_unknown_logging_key_is_named(self):
        with pytest.raises(ConfigError) as info:
            config_from_mapping({'logging': {'colour': True}})
        assert info.value.key == 'logging.colour'

    @pytest.mark.parametrize('degree', [2.5, 0.5])
    def test_kernel_degree_must_be_whole(self, degree):
        with pytest.raises(ConfigError) as info:
            config_from_mapping({'kernel': 'polynomial', 'kernel_d': degree, 'kernel_c': -1.0})
        assert info.value.key == 'kernel_d'
        assert config_from_mapping({'kernel_d': 3}).kernel_d == 3.0

    def test_synthetic_kind(self):
        spec = config_from_mapping({'n_users': 50, 'p_in': 1}, kind='synthetic')
        assert spec == SyntheticSpec(n_users=50, p_in=1.0)
        with pytest.raises(ConfigError):
            config_from_mapping({'lambda': 1.0}, kind='synthetic')

    def test_derived_configs(self):
        cfg = RunConfig(kernel=Kernel.POLYNOMIAL, kernel_d=3.0, beam_width=4)
        assert cfg.model_config(16).kernel_params.d == 3.0
        assert cfg.model_config(16).dim_embed == 16
        assert cfg.bandit_config().beam_width == 4
        assert cfg.pagerank_config().damping == 0.85


class TestConfigFiles:

    def test_save_and_load_round_trip(self, tmp_path):
        cfg = RunConfig(seed=9, lam=0.25, kernel=Kernel.AESD, end_day=7,
                        logging=dict(RunConfig().logging, **QUIET_LOGGING))
        save_config(cfg, tmp_path / 'run.json')
        assert load_config(tmp_path / 'run.json') == cfg

    def test_exponent_floats_in_json(self, tmp_path):
        path = tmp_path / 'run.json'
        path.write_text('{"learn_rate": 1e-3, "pagerank_tolerance": 1E-10}\n', encoding='utf-8')
        cfg = load_config(path)
        assert cfg.learn_rate == 1e-3
        assert cfg.pagerank_tolerance == 1e-10

    def test_exponent_floats_in_yaml(self, tmp_path):
        path = tmp_path / 'run.yaml'
        path.write_text("learn_rate: 1e-3\npagerank_tolerance: 1.0e-08\ndamping: 8.5e-1\n", encoding='utf-8')
        cfg = load_config(path)
        assert (cfg.learn_rate, cfg.pagerank_tolerance, cfg.damping) == (1e-3, 1e-8, 0.85)

    def test_saved_default_tolerance_loads(self, tmp_path):
        save_config(RunConfig(), tmp_path / 'run.json')
        assert '1e-08' in (tmp_path / 'run.json').read_text(encoding='utf-8')
        assert load_config(tmp_path / 'run.json') == RunConfig()

    def test_yaml_file(self, tmp_path):
        path = tmp_path / 'run.yaml'
        path.write_text("seed: 4\nlambda: 0.5\nselection_mode: random_walk\n", encoding='utf-8')
        cfg = load_config(path)
        assert (cfg.seed, cfg.lam, cfg.selection_mode) == (4, 0.5, SelectionMode.RANDOM_WALK)

    def test_empty_file_gives_defaults(self, tmp_path):
        path = tmp_path / 'run.yaml'
        path.write_text('', encoding='utf-8')
        assert load_config(path) == RunConfig()

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigError) as info:
            load_config(tmp_path / 'absent.yaml')
        assert info.value.key == '<file>'

    def test_shipped_configs_load(self):
        assert isinstance(load_config(CONFIG_DIR / 'run.yaml'), RunConfig)
        assert isinstance(load_config(CONFIG_DIR / 'synthetic.yaml', kind='synthetic'), SyntheticSpec)


@pytest.fixture
def cli_dir(tmp_path, monkeypatch, tiny_run_config, tiny_dataset_dir):
    """Working directory with a quiet run config next to the tiny dataset"""
    monkeypatch.chdir(tmp_path)
    save_config(tiny_run_config, tmp_path / 'run.json')
    return tmp_path


class TestCommandLine:

    def test_generate(self, cli_dir, tiny_spec, tiny_dataset_dir):
        save_config(tiny_spec, cli_dir / 'synthetic.json')
        assert main(['generate', '--config', 'synthetic.json', '--out', 'generated']) == 0
        assert ((cli_dir / 'generated' / 'logs.tsv').read_bytes()
                == (tiny_dataset_dir / 'logs.tsv').read_bytes())

    def test_run_then_recompute_metrics(self, cli_dir, tiny_dataset_dir, capsys):
        code = main(['run', '--config', 'run.json', '--data', str(tiny_dataset_dir), '--out', 'results'])
        assert code == 0
        assert 'F1:' in capsys.readouterr().out
        assert (cli_dir / 'results' / 'manifest.json').exists()

        code = main(['metrics', '--log', 'results/predictions.csv', '--data', str(tiny_dataset_dir),
                     '--out', 'again.csv'])
        assert code == 0
        printed = capsys.readouterr().out.strip().splitlines()
        original = read_metrics(cli_dir / 'results' / 'metrics.csv')
        recomputed = read_metrics(cli_dir / 'again.csv')
        assert list(recomputed['f1']) == list(original['f1'])
        assert list(recomputed['gini']) == list(original['gini'])
        assert printed[-1].startswith('avg,')

    def test_mode_override_and_fresh(self, cli_dir, tiny_dataset_dir):
        args = ['run', '--config', 'run.json', '--data', str(tiny_dataset_dir), '--out', 'none',
                '--mode', 'none', '--seed', '5']
        assert main(args) == 0
        assert main(args + ['--fresh']) == 0

    def test_explore(self, cli_dir, tiny_dataset_dir, capsys):
        assert main(['explore', '--config', 'run.json', '--data', str(tiny_dataset_dir),
                     '--user', 'u0000', '--day', '1']) == 0
        out = capsys.readouterr().out
        assert out.startswith('Friend paths for u0000 on day 1 (mcts):')

    def test_pagerank_dump(self, cli_dir, tiny_dataset_dir):
        assert main(['pagerank', '--config', 'run.json', '--data', str(tiny_dataset_dir),
                     '--out', 'spr.tsv']) == 0
        rows = [line.split('\t') for line in (cli_dir / 'spr.tsv').read_text(encoding='utf-8').splitlines()]
        scores = [float(score) for _, score in rows]
        assert sum(scores) == pytest.approx(1.0, abs=1e-6)
        assert scores == sorted(scores, reverse=True)

        assert main(['pagerank', '--config', 'run.json', '--data', str(tiny_dataset_dir),
                     '--day', '2', '--out', 'dpr.tsv']) == 0
        assert (cli_dir / 'dpr.tsv').exists()

    def test_bad_config_exit_code(self, cli_dir, tiny_dataset_dir, capsys):
        (cli_dir / 'bad.yaml').write_text('beam_width: 0\n', encoding='utf-8')
        code = main(['run', '--config', 'bad.yaml', '--data', str(tiny_dataset_dir), '--out', 'x'])
        assert code == 1
        assert 'beam_width' in capsys.readouterr().err

    def test_missing_config_exit_code(self, cli_dir, tiny_dataset_dir):
        assert main(['run', '--config', 'absent.yaml', '--data', str(tiny_dataset_dir), '--out', 'x']) == 1

    def test_missing_data_exit_code(self, cli_dir):
        assert main(['run', '--config', 'run.json', '--data', 'nowhere', '--out', 'x']) == 2

    def test_overrides_apply(self, cli_dir, tiny_run_config):
        class Args:
            config = 'run.json'
            seed = 42
            mode = 'one_hop'

        from src.main import _run_config
        cfg = _run_config(Args())
        expected = dataclasses.replace(tiny_run_config, seed=42, selection_mode=SelectionMode.ONE_HOP)
        assert dataclasses.replace(cfg, logging=expected.logging) == expected
        assert cfg.logging['file_path'] is None
