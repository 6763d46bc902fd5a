from __future__ import annotations

import os
from pathlib import Path
from unittest.mock import patch

import pytest

from knotconc.config import (
    DEFAULT_PARTITION_LIMIT,
    DEFAULT_SIGNATURE_BOUND,
    DEFAULT_SUITE_RANGES,
    get_atoms_path,
    get_partition_limit,
    get_signature_bound,
    init_environment,
    parse_range,
)


@pytest.mark.parametrize(
    "text,expected",
    [("1..10", (1, 10)), ("7", (7, 7)), ("3..3", (3, 3))],
)
def test_parse_range(text, expected):
    # assert
    assert parse_range(text) == expected


@pytest.mark.parametrize("text", ["", "a..b", "0..3", "5..1", "1..2..3", "-1"])
def test_parse_range_rejects(text):
    # execute / assert
    with pytest.raises(ValueError):
        parse_range(text)


def test_env_defaults():
    # execute
    with patch.dict(os.environ, {}, clear=True):
        limit = get_partition_limit()
        bound = get_signature_bound()
        atoms = get_atoms_path()

    # assert
    assert limit == DEFAULT_PARTITION_LIMIT
    assert bound == DEFAULT_SIGNATURE_BOUND
    assert atoms is None


def test_env_overrides():
    # prepare
    env = {"KNOTCONC_PARTITION_LIMIT": "4", "KNOTCONC_SIGNATURE_BOUND": "5", "KNOTCONC_ATOMS": "atoms.json"}

    # execute
    with patch.dict(os.environ, env, clear=True):
        limit = get_partition_limit()
        bound = get_signature_bound()
        atoms = get_atoms_path()

    # assert
    assert (limit, bound) == (4, 5)
    assert atoms == Path("atoms.json")


@pytest.mark.parametrize("value", ["zero", "0", "-3"])
def test_env_rejects_bad_values(value):
    # execute / assert
    with patch.dict(os.environ, {"KNOTCONC_PARTITION_LIMIT": value}, clear=True):
        with pytest.raises(ValueError):
            get_partition_limit()


def test_init_environment_loads_dotenv():
    # execute
    with patch("knotconc.config.load_dotenv") as fake_load, patch(
        "knotconc.config.logging.basicConfig"
    ) as fake_basic, patch.dict(os.environ, {"LOG_LEVEL": "debug"}, clear=True):
        logger = init_environment()

    # assert
    fake_load.assert_called_once()
    assert fake_basic.call_args.kwargs["level"] == "DEBUG"
    assert logger.name == "knotconc"


def test_default_ranges_cover_every_suite():
    # assert
    assert set(DEFAULT_SUITE_RANGES) == {"thm1", "thm2", "remark", "bcg", "lens", "torus", "cable"}
    assert all(lo <= hi for ranges in DEFAULT_SUITE_RANGES.values() for lo, hi in ranges.values())
