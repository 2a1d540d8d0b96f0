"""Batch evaluation kernels for the semantic oracles.

Formulas are compiled to post-order programs (``op``, ``lhs``, ``rhs`` int
arrays). Two kernels evaluate a program over a batch:

* ``relational_eval``: a batch of finite binary-relation models, worlds encoded
  as bits of an int64. Product and left residual take their lifted reading
  (``A * B`` holds at ``w`` when ``A`` holds at ``w`` and ``B`` at some
  predecessor of ``w``), which is what the two-copy ternary lifting computes.
* ``algebra_eval``: one finite algebra over a batch of assignments.

Every kernel has a numba version and a numpy version. Set ``RBL_DISABLE_NUMBA=1``
to force the numpy path; numba is also skipped when it cannot be imported.
"""

from __future__ import annotations

import os

import numpy as np

OP_ATOM, OP_TOP, OP_BOT, OP_AND, OP_OR, OP_RIMP, OP_LIMP, OP_PROD = range(8)

try:  # pragma: no cover - exercised through USE_NUMBA
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("RBL_DISABLE_NUMBA", "") not in ("1", "true", "yes")


def _njit(fn):
    if HAVE_NUMBA:
        return numba.njit(cache=True)(fn)
    return fn


# ---------------------------------------------------------------------------
# relational models


def relational_eval_numpy(op, lhs, rhs, succ, pred, val, full):
    """Return an (M, K) int64 array of world masks, one column per program node."""
    m, nw = succ.shape
    k = len(op)
    out = np.zeros((m, k), dtype=np.int64)
    for i in range(k):
        o = op[i]
        if o == OP_ATOM:
            out[:, i] = val[:, lhs[i]]
        elif o == OP_TOP:
            out[:, i] = full
        elif o == OP_BOT:
            pass
        elif o == OP_AND:
            out[:, i] = out[:, lhs[i]] & out[:, rhs[i]]
        elif o == OP_OR:
            out[:, i] = out[:, lhs[i]] | out[:, rhs[i]]
        else:
            a = out[:, lhs[i]]
            b = out[:, rhs[i]]
            acc = np.zeros(m, dtype=np.int64)
            for w in range(nw):
                bit = np.int64(1) << w
                if o == OP_RIMP:
                    ok = (succ[:, w] & a & ~b) == 0
                elif o == OP_PROD:
                    ok = ((a & bit) != 0) & ((pred[:, w] & b) != 0)
                else:  # left residual: lhs <- rhs
                    ok = ((pred[:, w] & b) == 0) | ((a & bit) != 0)
                acc |= np.where(ok, bit, 0)
            out[:, i] = acc & full
    return out


def _relational_eval_loop(op, lhs, rhs, succ, pred, val, full):
    m, nw = succ.shape
    k = len(op)
    out = np.zeros((m, k), dtype=np.int64)
    for j in range(m):
        for i in range(k):
            o = op[i]
            if o == 0:
                out[j, i] = val[j, lhs[i]]
            elif o == 1:
                out[j, i] = full[j]
            elif o == 2:
                out[j, i] = 0
            elif o == 3:
                out[j, i] = out[j, lhs[i]] & out[j, rhs[i]]
            elif o == 4:
                out[j, i] = out[j, lhs[i]] | out[j, rhs[i]]
            else:
                a = out[j, lhs[i]]
                b = out[j, rhs[i]]
                acc = 0
                for w in range(nw):
                    bit = np.int64(1) << w
                    if (full[j] & bit) == 0:
                        continue
                    if o == 5:
                        if (succ[j, w] & a & ~b) == 0:
                            acc |= bit
                    elif o == 7:
                        if (a & bit) != 0 and (pred[j, w] & b) != 0:
                            acc |= bit
                    else:
                        if (pred[j, w] & b) == 0 or (a & bit) != 0:
                            acc |= bit
                out[j, i] = acc
    return out


relational_eval_numba = _njit(_relational_eval_loop)


def relational_eval(op, lhs, rhs, succ, pred, val, full):
    if USE_NUMBA:
        return relational_eval_numba(op, lhs, rhs, succ, pred, val, full)
    return relational_eval_numpy(op, lhs, rhs, succ, pred, val, full)


# ---------------------------------------------------------------------------
# finite algebras


def algebra_eval_numpy(op, lhs, rhs, meet, join, prod, rimp, limp, top, bot, assign):
    """Return a (K, nodes) array of element indices, one row per assignment."""
    kk = assign.shape[0]
    out = np.zeros((kk, len(op)), dtype=np.int64)
    for i in range(len(op)):
        o = op[i]
        if o == OP_ATOM:
            out[:, i] = assign[:, lhs[i]]
        elif o == OP_TOP:
            out[:, i] = top
        elif o == OP_BOT:
            out[:, i] = bot
        else:
            table = (None, None, None, meet, join, rimp, limp, prod)[o]
            out[:, i] = table[out[:, lhs[i]], out[:, rhs[i]]]
    return out


def _algebra_eval_loop(op, lhs, rhs, meet, join, prod, rimp, limp, top, bot, assign):
    kk = assign.shape[0]
    out = np.zeros((kk, len(op)), dtype=np.int64)
    for j in range(kk):
        for i in range(len(op)):
            o = op[i]
            if o == 0:
                out[j, i] = assign[j, lhs[i]]
            elif o == 1:
                out[j, i] = top
            elif o == 2:
                out[j, i] = bot
            else:
                x = out[j, lhs[i]]
                y = out[j, rhs[i]]
                if o == 3:
                    out[j, i] = meet[x, y]
                elif o == 4:
                    out[j, i] = join[x, y]
                elif o == 5:
                    out[j, i] = rimp[x, y]
                elif o == 6:
                    out[j, i] = limp[x, y]
                else:
                    out[j, i] = prod[x, y]
    return out


algebra_eval_numba = _njit(_algebra_eval_loop)


def algebra_eval(op, lhs, rhs, meet, join, prod, rimp, limp, top, bot, assign):
    if USE_NUMBA:
        return algebra_eval_numba(op, lhs, rhs, meet, join, prod, rimp, limp, top, bot, assign)
    return algebra_eval_numpy(op, lhs, rhs, meet, join, prod, rimp, limp, top, bot, assign)


# ---------------------------------------------------------------------------
# program compilation


class Program:
    """Post-order program for one or more formulas sharing subterms."""

    def __init__(self, atom_names=()):
        self.atom_index: dict[str, int] = {name: i for i, name in enumerate(atom_names)}
        self.op: list[int] = []
        self.lhs: list[int] = []
        self.rhs: list[int] = []
        self._memo: dict = {}

    def add(self, f) -> int:
        from .syntax import And, Bot, LImp, Or, Prod, Prop, RImp, Top

        got = self._memo.get(f)
        if got is not None:
            return got
        t = type(f)
        if t is Prop:
            if f.name not in self.atom_index:
                self.atom_index[f.name] = len(self.atom_index)
            node = (OP_ATOM, self.atom_index[f.name], 0)
        elif t is Top:
            node = (OP_TOP, 0, 0)
        elif t is Bot:
            node = (OP_BOT, 0, 0)
        else:
            code = {And: OP_AND, Or: OP_OR, RImp: OP_RIMP, LImp: OP_LIMP, Prod: OP_PROD}[t]
            node = (code, self.add(f.left), self.add(f.right))
        self.op.append(node[0])
        self.lhs.append(node[1])
        self.rhs.append(node[2])
        idx = len(self.op) - 1
        self._memo[f] = idx
        return idx

    def arrays(self):
        return (np.asarray(self.op, dtype=np.int64), np.asarray(self.lhs, dtype=np.int64),
                np.asarray(self.rhs, dtype=np.int64))
