"""Inputs shared by the golden-file tests and tests/regen_goldens.py."""

from pathlib import Path

from rbl.hilbert import AXIOM_SCHEMAS, axiom_instance
from rbl.syntax import Prop, print_formula

DATA = Path(__file__).parent / "data"
PROOFS = Path(__file__).parent / "proofs"

DISTINCT = {"A": Prop("p"), "B": Prop("q"), "C": Prop("r")}
AXIOM_INSTANCES = [print_formula(axiom_instance(i, DISTINCT)) for i in sorted(AXIOM_SCHEMAS)]

CLI_CASES = {
    "prove_axiom1": ["prove", "--json", "top |- p -> p"],
    "prove_dagger": ["prove", "--json", "top |- p & (p -> q) -> (top -> q)"],
    "prove_ddagger": ["prove", "--json", "top |- p & (p -> q) -> q"],
    "prove_lj": ["prove", "--json", "--profile", "lj", "p & (p -> q) |- q"],
    "countermodel_ddagger": ["countermodel", "--json", "--max-size", "4", "top |- p & (p -> q) -> q"],
    "parse_formula": ["parse", "--json", "--kind", "formula", "(p <- q) * r | ~s"],
    "parse_sequent": ["parse", "--json", "p , (q ; r) |- s"],
    "check_model": ["check-model", "--json", str(DATA / "chain2.json"), "--formula", "p -> p"],
    "check_ternary": ["check-ternary", "--json", str(DATA / "chain2_lifted.json"), "--sequent", "top |- p -> q"],
    "lift": ["lift", "--json", str(DATA / "chain2.json")],
    "enumerate_algebras": ["enumerate-algebras", "--json", "--max-size", "3"],
    "validate_algebra": ["validate-algebra", "--json", str(DATA / "chain3_heyting.json"),
                         "--formula", "p -> p", "--assign", "{\"p\": 1}"],
    "check_simple": ["check-simple", "--json", "--system", "srbl", str(DATA / "top1.deriv")],
    "check_simple_sstar": ["check-simple", "--json", "--system", "sstar", str(DATA / "wl.deriv")],
    "check_simple_wrong_system": ["check-simple", "--json", "--system", "sstar", str(DATA / "top1.deriv")],
    "check_hilbert": ["check-hilbert", "--json", str(DATA / "mp.hilbert")],
    "check_proof": ["check-proof", "--json", str(PROOFS / "cut_00.proof")],
    "eliminate_mix": ["eliminate-mix", "--json", str(PROOFS / "cut_06.proof")],
    "corpus": ["corpus", "--json", str(DATA / "corpus")],
}
