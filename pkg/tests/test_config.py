import json

import pytest

from noonsim.config import (
    build_driver_config,
    default_config,
    emit_config,
    hash_config,
    parse_config,
    parse_config_data,
)
from noonsim.errors import ConfigError


def test_minimal_phase_config_applies_published_defaults(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(
        json.dumps(
            {"experiment": "phase-sweep", "phase_sweep": {"photon_numbers": [2, 4]}}
        )
    )
    cfg = parse_config(str(path))
    section = cfg.effective["phase_sweep"]
    assert section["launch_offset"] == 0.375
    assert section["center_frequency"] == 526.0
    assert section["spectral_std"] == 1.59
    assert section["photon_numbers"] == [2, 4]
    assert "phase_sweep.launch_offset" in cfg.defaults_applied
    assert "phase_sweep.photon_numbers" not in cfg.defaults_applied


def test_negative_cell_size_names_the_key():
    with pytest.raises(ConfigError) as err:
        parse_config_data(
            {"experiment": "phase-sweep", "phase_sweep": {"domain_length": -1.0}}
        )
    assert "phase_sweep.domain_length" in str(err.value)


def test_unknown_key_rejected():
    with pytest.raises(ConfigError) as err:
        parse_config_data(
            {"experiment": "phase-sweep", "phase_sweep": {"wavelength": 1.0}}
        )
    assert "wavelength" in str(err.value)


def test_duplicate_key_rejected(tmp_path):
    path = tmp_path / "dup.json"
    path.write_text(
        '{"experiment": "modes", "modes": {"cells": 16, "cells": 32}}'
    )
    with pytest.raises(ConfigError) as err:
        parse_config(str(path))
    assert "duplicate" in str(err.value)


def test_type_mismatch_rejected():
    with pytest.raises(ConfigError) as err:
        parse_config_data(
            {"experiment": "phase-sweep", "phase_sweep": {"cells": "many"}}
        )
    assert "phase_sweep.cells" in str(err.value)


def test_invariant_violation_surfaces_at_parse_time():
    # detectors inside the splitter slab
    with pytest.raises(ConfigError):
        parse_config_data(
            {
                "experiment": "phase-sweep",
                "phase_sweep": {"detector_position": 1e-6},
            }
        )
    # ghost scan range must cover the slab
    with pytest.raises(ConfigError):
        parse_config_data(
            {"experiment": "ghost-scan", "ghost_scan": {"s_max": 0.05}}
        )


def test_round_trip_reproduces_effective_config(tmp_path):
    cfg = parse_config_data(
        {
            "experiment": "ghost-scan",
            "ghost_scan": {"photon_numbers": [2], "s_count": 31,
                           "geometry": {"cells_x": 45, "cells_y": 33,
                                        "side_length": 0.12}},
        }
    )
    path = tmp_path / "effective.json"
    emit_config(cfg, str(path))
    cfg2 = parse_config(str(path))
    assert cfg2.effective == cfg.effective
    assert cfg2.config_hash == cfg.config_hash
    assert cfg2.defaults_applied == {}  # everything materialized


def test_hash_stable_under_key_order():
    a = {"experiment": "modes", "modes": {"cells": 16, "dimension": 1}}
    b = {"modes": {"dimension": 1, "cells": 16}, "experiment": "modes"}
    assert (
        parse_config_data(a).config_hash == parse_config_data(b).config_hash
    )


def test_defaults_recorded_for_every_missing_key():
    cfg = default_config("oracle-check")
    assert "oracle_check.seed" in cfg.defaults_applied
    assert "oracle_check.draws" in cfg.defaults_applied


def test_driver_config_construction():
    cfg = default_config("phase-sweep")
    driver = build_driver_config(cfg)
    assert driver.cells == 1507
    cfg2 = default_config("ghost-scan")
    driver2 = build_driver_config(cfg2)
    assert driver2.geometry.cells_x * driver2.geometry.cells_y <= 6500


def test_experiment_kind_required():
    with pytest.raises(ConfigError):
        parse_config_data({})
    with pytest.raises(ConfigError):
        parse_config_data({"experiment": "teleport"})
