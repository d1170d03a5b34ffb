import os
import subprocess
import sys
from array import array

import pytest

from dlmeta import _pykernel
from dlmeta.kernel import AND, ATOM, BACKENDS, DEFAULT_BACKEND, OR, TRUE, get_saturate


def program():
    # goal 0: c0 <- TRUE; goal 1: c1 <- c0 and c2; goal 2: c2 <- c0 or c1; goal 3: c3 <- c3
    op = array("i", [TRUE, ATOM, ATOM, AND, ATOM, ATOM, OR, ATOM])
    a = array("i", [0, 0, 2, 0, 0, 1, 2, 3])
    b = array("i", [0, 0, 0, 2, 0, 0, 2, 0])
    kids = array("i", [1, 2, 4, 5])
    goal_cid = array("i", [1, 2, 0, 3])
    goal_root = array("i", [3, 6, 0, 7])
    return op, a, b, kids, goal_cid, goal_root


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_saturation_order(backend):
    member = bytearray(4)
    out = list(get_saturate(backend)(*program(), member))
    # scan 1 adds c0 then nothing else depends on later goals; scan 2 adds c2, c1
    assert out == [0, 2, 1]
    assert list(member) == [1, 1, 1, 0]


@pytest.mark.parametrize("backend", sorted(BACKENDS))
def test_preset_members_are_not_reported(backend):
    member = bytearray([1, 0, 0, 0])
    assert list(get_saturate(backend)(*program(), member)) == [2, 1]


def test_empty_program():
    empty = [array("i") for _ in range(6)]
    for f in BACKENDS.values():
        assert list(f(*empty, bytearray())) == []


def test_python_backend_always_present():
    assert BACKENDS["python"] is _pykernel.saturate
    assert DEFAULT_BACKEND in BACKENDS


def test_pure_mode_env_var():
    env = dict(os.environ, DLMETA_PURE="1")
    out = subprocess.run([sys.executable, "-c", "import dlmeta.kernel as k; print(k.DEFAULT_BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
