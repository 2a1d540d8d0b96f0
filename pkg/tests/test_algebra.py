import itertools
import random
from functools import lru_cache

import numpy as np
import pytest

from rbl.algebra import (FiniteRba, MissingAtom, NotResiduated, SizeLimit, algebra_valid, check_basic_reduct,
                         check_equality_criterion, check_lattice, check_product_laws, check_rba_axioms,
                         check_unit_remark, distributive_lattices, enumerate_rbas, eval_in_algebra, rbas_upto,
                         residual_left, residual_right, sequent_counterexample, unit_elements)
from rbl.syntax import Prop, TOP, parse_formula

F = parse_formula

# Frozen from the naive oracle below before the pruned enumerator existed:
# RBAs on the unique lattice of each size.
FROZEN_COUNTS = {1: 1, 2: 2, 3: 6}


def chain(n, prod=None):
    leq = [[int(a <= b) for b in range(n)] for a in range(n)]
    prod = prod if prod is not None else [[min(a, b) for b in range(n)] for a in range(n)]
    return FiniteRba.from_tables(leq, prod)


@lru_cache(maxsize=None)
def naive_tables(n):
    """Every product table on the n-chain (the only lattice for n <= 3) with its failed axioms."""
    out = []
    for cells in itertools.product(range(n), repeat=n * n):
        alg = chain(n, np.array(cells).reshape(n, n))
        out.append((alg, frozenset(d.axiom for d in check_rba_axioms(alg))))
    return out


def naive_rba_count(n):
    return sum(1 for _, failed in naive_tables(n) if not failed)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_naive_oracle_matches_frozen_counts(n):
    assert naive_rba_count(n) == FROZEN_COUNTS[n]


def test_enumerator_matches_frozen_counts():
    sizes = [a.size for a in enumerate_rbas(3)]
    assert {n: sizes.count(n) for n in (1, 2, 3)} == FROZEN_COUNTS


def test_enumerator_counts_regression():
    sizes = [a.size for a in rbas_upto(4)]
    assert sizes.count(4) == 28 and len(sizes) == 37


def test_size_limit():
    with pytest.raises(SizeLimit):
        list(enumerate_rbas(6))


def test_distributive_lattice_counts():
    assert [len(distributive_lattices(n)) for n in range(1, 6)] == [1, 1, 1, 2, 3]


def test_residual_examples():
    two = chain(2)
    assert residual_right(two, 0, 0) == 1
    assert residual_right(two, 1, 0) == 0
    assert all(residual_right(two, a, 1) == 1 for a in range(2))
    assert residual_left(two, 0, 1) == 0


def test_not_residuated():
    # on the four-element square, top*a = top*b = bot but top*top = top
    square = next(l for l in distributive_lattices(4) if not l[1, 2])
    prod = np.zeros((4, 4), dtype=int)
    prod[3, 3] = 3
    alg = FiniteRba.from_tables(square, prod)
    with pytest.raises(NotResiduated):
        residual_right(alg, 3, 0)
    assert any(d.axiom.startswith("residuation") for d in check_rba_axioms(alg))


def test_axiom_examples():
    assert check_rba_axioms(chain(1)) == []
    assert check_rba_axioms(chain(2)) == []
    diags = check_rba_axioms(chain(2, [[1, 1], [1, 1]]))
    assert any(d.axiom == "w1" and d.witness[0] == 0 for d in diags)


def test_eval_examples():
    two = chain(2)
    assert eval_in_algebra(two, {}, TOP) == two.top
    assert eval_in_algebra(two, {"p": 0}, F("p -> p")) == two.top
    assert eval_in_algebra(two, {"p": 1, "q": 0}, F("p * q")) == 0
    with pytest.raises(MissingAtom):
        eval_in_algebra(two, {}, Prop("p"))


def test_validity_examples():
    two = chain(2)
    assert algebra_valid(two, TOP)
    assert algebra_valid(two, F("p -> (q -> p)"))
    ddagger = F("p & (p -> q) -> q")
    assert any(not algebra_valid(a, ddagger) for a in rbas_upto(4))
    assert sequent_counterexample(two, F("p"), F("q")) == {"p": 1, "q": 0}


@pytest.mark.parametrize("alg", rbas_upto(4), ids=lambda a: f"size{a.size}")
def test_theorems_hold_on_every_small_algebra(alg):
    assert check_rba_axioms(alg) == []
    assert check_basic_reduct(alg) == []
    assert check_product_laws(alg, literal_v=True) == []
    assert check_product_laws(alg, literal_v=False) == []
    assert check_unit_remark(alg) == []
    assert check_equality_criterion(alg) == []


def test_some_algebra_has_a_unit():
    assert any(unit_elements(a) for a in rbas_upto(3))


def test_basic_reduct_needs_restricted_contraction():
    # residuated with weakening but without c_r: some basic-algebra condition breaks
    only_cr = [alg for alg, failed in naive_tables(3) if failed == {"c_r"}]
    assert only_cr
    assert any(check_basic_reduct(alg) for alg in only_cr)


def all_checks(alg):
    return (check_rba_axioms(alg) + check_basic_reduct(alg) + check_product_laws(alg, literal_v=False)
            + check_product_laws(alg, literal_v=True))


def test_mutations_are_caught():
    rng = random.Random(20240611)
    algs = [a for a in rbas_upto(4) if a.size >= 2]
    known = {a.key() for a in algs}
    caught, survivors = 0, []
    for _ in range(100):
        alg = rng.choice(algs)
        prod = alg.prod.copy()
        a, b = rng.randrange(alg.size), rng.randrange(alg.size)
        prod[a, b] = rng.choice([x for x in range(alg.size) if x != prod[a, b]])
        mutant = FiniteRba.from_tables(alg.leq, prod)
        if all_checks(mutant):
            caught += 1
        else:
            survivors.append(mutant)
    # a survivor must really be an algebra: it shows up in the enumeration
    assert all(m.key() in known for m in survivors)
    assert caught >= 95, (caught, len(survivors))


def test_json_round_trip():
    alg = rbas_upto(4)[-1]
    back = FiniteRba.from_json(alg.to_json())
    assert back.key() == alg.key()
    assert (back.limp == alg.limp).all()


def test_lattice_check_catches_a_bad_meet():
    alg = chain(3)
    broken = FiniteRba(alg.size, alg.leq, alg.meet.copy(), alg.join, alg.prod, alg.bot, alg.top, alg.rimp, alg.limp)
    broken.meet[0, 2] = 2
    assert check_lattice(broken)
