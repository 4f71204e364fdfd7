import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from combpfaff import _kernels
from combpfaff.flows import _KernelInput, random_planar_network
from combpfaff.graphio import load_fixture
from combpfaff.groves import _edge_arrays, random_graph_with_boundary


def grove_inputs(g, parts):
    eu, ev = _edge_arrays(g, 30)
    label = np.full(len(g.vertices), -1, dtype=np.int64)
    for pid, part in enumerate(parts):
        for v in part:
            label[g.index[v]] = pid
    return len(g.vertices), eu, ev, label, len(g.vertices) - len(parts)


@given(seed=st.integers(0, 10_000), pair=st.booleans())
@settings(max_examples=30)
def test_grove_kernel_paths_agree(seed, pair):
    g = random_graph_with_boundary(seed)
    bd = g.boundary
    parts = [(bd[0], bd[1])] + [(v,) for v in bd[2:]] if pair else [(v,) for v in bd]
    args = grove_inputs(g, parts)
    fast = np.sort(_kernels.grove_masks(*args))
    slow = np.sort(_kernels.grove_masks_py(*args))
    assert np.array_equal(fast, slow)
    assert len(set(_kernels.popcount_masks(slow))) <= 1


@given(seed=st.integers(0, 10_000))
@settings(max_examples=30)
def test_flow_kernel_paths_agree(seed):
    n = random_planar_network(seed)
    kin = _KernelInput(n)
    args = (kin.n_int, kin.inc, kin.start, kin.pmask, kin.ptheta, np.int64(0), np.int64(0))
    fm, ft = _kernels.flow_masks(*args)
    sm, st_ = _kernels.flow_masks_py(*args)
    assert sorted(zip(fm.tolist(), ft.tolist())) == sorted(zip(sm.tolist(), st_.tolist()))


def test_fig6_grove_count():
    g = load_fixture("fig6-grove")
    assert len(_kernels.grove_masks(*grove_inputs(g, [(v,) for v in g.boundary]))) > 0


def test_kernels_return_int64():
    n = load_fixture("flow-square")
    masks, thetas = _KernelInput(n).run(0, 0)
    assert masks.dtype == np.int64 and thetas.dtype == np.int64


@pytest.mark.parametrize("flag,expect", [("1", "False"), ("0", None), ("", None)])
def test_env_flag_selects_path(flag, expect):
    env = dict(os.environ, COMBPFAFF_DISABLE_NUMBA=flag)
    out = subprocess.run([sys.executable, "-c", "from combpfaff import USING_NUMBA; print(USING_NUMBA)"],
                         env=env, capture_output=True, text=True, check=True).stdout.strip()
    if expect is None:
        try:
            import numba  # noqa: F401
            expect = "True"
        except ImportError:
            expect = "False"
    assert out == expect
