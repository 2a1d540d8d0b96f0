"""The numba kernels agree with the numpy fallback."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rbl import _kernels
from rbl.algebra import _all_assignments, rbas_upto
from rbl.kripke import model_bank

from strategies import formulas

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")

BANK = model_bank(3, 2)
ALGS = [a for a in rbas_upto(4) if a.size >= 3]


def program(fs):
    prog = _kernels.Program(["p", "q"])
    for f in fs:
        prog.add(f)
    return prog.arrays()


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.lists(formulas(8, ("p", "q")), min_size=1, max_size=6))
def test_relational_kernels_agree(fs):
    op, lhs, rhs = program(fs)
    args = (op, lhs, rhs, BANK.succ, BANK.pred, BANK.val, BANK.full)
    assert np.array_equal(_kernels.relational_eval_numba(*args), _kernels.relational_eval_numpy(*args))


@needs_numba
@settings(max_examples=60, deadline=None)
@given(st.lists(formulas(8, ("p", "q")), min_size=1, max_size=6), st.sampled_from(ALGS))
def test_algebra_kernels_agree(fs, alg):
    op, lhs, rhs = program(fs)
    args = (op, lhs, rhs, alg.meet, alg.join, alg.prod, alg.rimp, alg.limp, alg.top, alg.bot,
            _all_assignments(alg.size, 2))
    assert np.array_equal(_kernels.algebra_eval_numba(*args), _kernels.algebra_eval_numpy(*args))


def test_env_flag_forces_numpy():
    code = "from rbl import _kernels; print(_kernels.USE_NUMBA)"
    env = dict(os.environ, RBL_DISABLE_NUMBA="1")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "False"


def test_numpy_path_end_to_end():
    # the oracles give the same verdicts with numba switched off
    code = (
        "from rbl.lrbl import prove, Proved, Refuted\n"
        "assert isinstance(prove('top |- p & (p -> q) -> (top -> q)'), Proved)\n"
        "assert isinstance(prove('top |- p & (p -> q) -> q'), Refuted)\n"
        "assert isinstance(prove('p <- q |- p'), Refuted)\n"
        "from rbl import _kernels; assert not _kernels.USE_NUMBA\n"
    )
    env = dict(os.environ, RBL_DISABLE_NUMBA="1")
    subprocess.run([sys.executable, "-c", code], env=env, check=True)
