import math
import os

import pytest

from scenesem.config import CalculiConfig, Config, config_from_dict, load_config
from scenesem.errors import ConfigError


class TestDefaults:
    def test_defaults_valid(self):
        Config().validate()

    def test_pattern_defaults(self):
        cfg = Config()
        assert cfg.patterns.d_touch == 0.05
        assert cfg.patterns.delta_min == 0.10
        assert cfg.patterns.gap_max == 0.2
        assert cfg.calculi.eps_rcc == 1e-6
        assert cfg.calculi.theta_same == pytest.approx(math.pi / 4)
        assert cfg.floorplan.corridor_aspect == 3.0


class TestFromDict:
    def test_partial_override(self):
        cfg = config_from_dict({"patterns": {"d_touch": 0.1}})
        assert cfg.patterns.d_touch == 0.1
        assert cfg.patterns.eps_d == 0.01  # untouched default

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError):
            config_from_dict({"nonsense": {}})

    def test_unknown_key_rejected(self):
        with pytest.raises(ConfigError):
            config_from_dict({"calculi": {"epsilon": 1.0}})

    def test_bad_value_rejected(self):
        with pytest.raises(ConfigError):
            config_from_dict({"patterns": {"d_touch": -1.0}})
        with pytest.raises(ConfigError):
            config_from_dict({"calculi": {"d_adjacent": 3.0, "d_near": 1.0}})


class TestLoadFile:
    def test_json_file(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text('{"floorplan": {"min_dim": 0.5}}')
        assert load_config(path).floorplan.min_dim == 0.5

    def test_toml_file(self, tmp_path):
        path = tmp_path / "cfg.toml"
        path.write_text("[patterns]\nd_touch = 0.08\n\n[calculi]\nd_near = 2.0\n")
        cfg = load_config(path)
        assert cfg.patterns.d_touch == 0.08
        assert cfg.calculi.d_near == 2.0

    def test_env_fallback(self, tmp_path, monkeypatch):
        path = tmp_path / "cfg.json"
        path.write_text('{"patterns": {"d_touch": 0.2}}')
        monkeypatch.setenv("SCENESEM_CONFIG", str(path))
        assert load_config(None).patterns.d_touch == 0.2

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            load_config("/no/such/config.json")

    def test_invalid_toml(self, tmp_path):
        path = tmp_path / "cfg.toml"
        path.write_text("this is not toml [")
        with pytest.raises(ConfigError):
            load_config(path)


class TestOrientConesValidated:
    def test_half_angle_bounds(self):
        with pytest.raises(ConfigError):
            CalculiConfig(theta_face=math.pi).validate()
