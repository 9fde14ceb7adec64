import json

import pytest

from configs.base_config import ConfigurationManager
from configs.base_path import resolve_output_path
from configs.preset_conf import preset_registry
from configs.run_conf import (
    RunConfig,
    parse_branches,
    parse_float_list,
    parse_int_list,
    parse_kappa_grid,
    parse_window,
)
from configs.solver_conf import SolverSettings
from modules.errors import ConfigError
from modules.model import Regime


class TestConfigurationManager:
    def test_system_env_wins(self, monkeypatch):
        monkeypatch.setenv('MBSPEC_TEST_KEY', 'from-env')
        manager = ConfigurationManager()
        assert manager.get('MBSPEC_TEST_KEY') == 'from-env'
        assert manager.get('MBSPEC_MISSING_KEY', 'fallback') == 'fallback'

    def test_get_int(self, monkeypatch):
        monkeypatch.setenv('MBSPEC_TEST_INT', 'seven')
        monkeypatch.setenv('MBSPEC_TEST_ZERO', '0')
        manager = ConfigurationManager()
        assert manager.get_int('MBSPEC_TEST_INT', 3) == 3
        assert manager.get_int('MBSPEC_TEST_ZERO', 3) == 0
        assert manager.get_int('MBSPEC_TEST_ZERO', 3, minimum=1) == 1

    def test_environment(self, monkeypatch):
        monkeypatch.setenv('APP_ENV', 'prd')
        assert ConfigurationManager().is_production()
        monkeypatch.setenv('APP_ENV', 'staging')
        manager = ConfigurationManager()
        assert manager.get_environment() == 'dev'
        assert manager.is_development()

    def test_log_level(self, monkeypatch):
        monkeypatch.delenv('MBSPEC_LOG_LEVEL', raising=False)
        monkeypatch.setenv('APP_ENV', 'prd')
        assert ConfigurationManager().log_level() == 'WARNING'
        monkeypatch.setenv('APP_ENV', 'dev')
        assert ConfigurationManager().log_level() == 'INFO'
        monkeypatch.setenv('MBSPEC_LOG_LEVEL', 'debug')
        assert ConfigurationManager().log_level() == 'DEBUG'

    def test_attribute_access(self, monkeypatch):
        monkeypatch.setenv('MBSPEC_TEST_ATTR', 'yes')
        manager = ConfigurationManager()
        assert manager.MBSPEC_TEST_ATTR == 'yes'
        with pytest.raises(AttributeError):
            manager.MBSPEC_NOT_SET_ANYWHERE


class TestSolverSettings:
    def test_defaults(self):
        s = SolverSettings()
        assert s.pole_eps == 1e-6
        assert s.root_xtol == 1e-12
        assert s.grid_divisions == 8
        assert s.threads >= 1
        assert 'threads' not in s.as_tolerances()

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv('MBSPEC_POLE_EPS', '1e-5')
        monkeypatch.setenv('MBSPEC_THREADS', '0')
        s = SolverSettings()
        assert s.pole_eps == 1e-5
        assert s.threads == 1

    def test_with_overrides(self):
        s = SolverSettings()
        assert s.with_overrides({}) is s
        changed = s.with_overrides({'grid_divisions': 16, 'pole_eps': 1e-7})
        assert changed.grid_divisions == 16
        assert changed.pole_eps == 1e-7
        assert s.grid_divisions == 8

    def test_invalid_overrides(self):
        s = SolverSettings()
        with pytest.raises(ValueError):
            s.with_overrides({'no_such_tolerance': 1.0})
        with pytest.raises(ValueError):
            s.with_overrides({'grid_divisions': 1})


class TestPresets:
    def test_registry(self):
        assert preset_registry.names() == [f"fig{i}" for i in range(1, 8)]
        assert preset_registry.get('FIG3').L == 0.3
        with pytest.raises(ConfigError):
            preset_registry.get('fig9')

    def test_c_values(self):
        fig1 = preset_registry.get('fig1')
        assert fig1.c_values == (0.2, 0.4, 0.6, 0.8, 1.0, 1.2, 1.4, 1.6, 1.8)
        assert (fig1.L, fig1.regime) == (100.0, 'above')
        fig7 = preset_registry.get('fig7')
        assert len(fig7.c_values) == 14
        assert fig7.c_values[-1] == 2.8
        assert (fig7.L, fig7.regime) == (0.278, 'below')


class TestParsers:
    def test_valid(self):
        assert parse_kappa_grid('0:25:0.05') == (0.0, 25.0, 0.05)
        assert parse_window('16:40.5') == (16.0, 40.5)
        assert parse_branches('0:3') == (0, 3)
        assert parse_float_list('0.2, 0.4,0.6') == [0.2, 0.4, 0.6]
        assert parse_int_list('1,2,4') == [1, 2, 4]

    @pytest.mark.parametrize("parser, text", [
        (parse_kappa_grid, 'abc'),
        (parse_kappa_grid, '0:1'),
        (parse_kappa_grid, '0::0.1'),
        (parse_window, '1:x'),
        (parse_branches, '0:1.5'),
        (parse_float_list, ''),
        (parse_float_list, '0.2,x'),
        (parse_int_list, '1,two'),
    ])
    def test_invalid(self, parser, text):
        with pytest.raises(ConfigError):
            parser(text)


class TestRunConfig:
    def test_defaults(self):
        rc = RunConfig()
        assert rc.c_values == [1.0]
        cfg = rc.system_config()
        assert (cfg.V, cfg.L, cfg.c, cfg.regime) == (15.0, 1.0, 1.0, Regime.ABOVE)
        assert rc.system_config(0.4).c == 0.4

    def test_json_round_trip(self):
        rc = RunConfig.from_sources({'preset': 'fig7', 'tolerances': {'pole_eps': 1e-7}})
        assert RunConfig.model_validate_json(rc.model_dump_json()) == rc

    def test_preset_file_cli_priority(self, tmp_path):
        path = tmp_path / 'run.json'
        path.write_text(json.dumps({'preset': 'fig2', 'L': 7.0, 'c': 0.5}), encoding='utf-8')

        rc = RunConfig.from_sources({'L': None}, str(path))
        assert rc.preset == 'fig2'
        assert rc.L == 7.0
        assert rc.V == 15.0
        assert len(rc.c_values) == 9

        rc = RunConfig.from_sources({'L': 9.0, 'c_sweep': [1.0]}, str(path))
        assert rc.L == 9.0
        assert rc.c_values == [1.0]

    def test_tolerances_merge(self, tmp_path):
        path = tmp_path / 'run.json'
        path.write_text(json.dumps({'tolerances': {'pole_eps': 1e-5, 'root_xtol': 1e-10}}), encoding='utf-8')
        rc = RunConfig.from_sources({'tolerances': {'root_xtol': 1e-11}}, str(path))
        assert rc.tolerances == {'pole_eps': 1e-5, 'root_xtol': 1e-11}

    @pytest.mark.parametrize("cli", [
        {'kappa_grid': (1.0, 0.0, 0.1)},
        {'kappa_grid': (0.0, 1.0, 0.0)},
        {'branches': (3, 1)},
        {'threads': 0},
        {'n_max': -1},
        {'bogus': 1},
        {'regime': 'sideways'},
        {'preset': 'fig0'},
    ])
    def test_invalid(self, cli):
        with pytest.raises(ConfigError):
            RunConfig.from_sources(cli)

    def test_bad_config_file(self, tmp_path):
        with pytest.raises(ConfigError):
            RunConfig.from_sources({}, str(tmp_path / 'missing.json'))
        path = tmp_path / 'list.json'
        path.write_text('[1, 2]', encoding='utf-8')
        with pytest.raises(ConfigError):
            RunConfig.from_sources({}, str(path))


def test_resolve_output_path(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert resolve_output_path('out') == tmp_path / 'out'
    assert resolve_output_path(str(tmp_path / 'abs')) == tmp_path / 'abs'
