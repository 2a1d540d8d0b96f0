"""Rewrite the golden files. Run from the repository root: python3 tests/regen_goldens.py"""

import contextlib
import io
import sys
from pathlib import Path

HERE = Path(__file__).parent
sys.path.insert(0, str(HERE))

from cut_corpus import build_corpus  # noqa: E402

from rbl.cli import run  # noqa: E402
from rbl.lrbl import Proved, eliminate_mix, prove, to_sexpr  # noqa: E402
from rbl.syntax import parse_sequent  # noqa: E402

from golden_cases import AXIOM_INSTANCES, CLI_CASES  # noqa: E402


def main():
    proofs = HERE / "proofs"
    for i, t in enumerate(build_corpus()):
        (proofs / f"cut_{i:02d}.proof").write_text(to_sexpr(t))
        (proofs / f"cut_{i:02d}.elim.proof").write_text(to_sexpr(eliminate_mix(t)))
    for i, text in enumerate(AXIOM_INSTANCES, 1):
        v = prove(parse_sequent(f"top |- {text}"))
        assert isinstance(v, Proved)
        (proofs / f"axiom_{i:02d}.proof").write_text(to_sexpr(v.proof))
    for name, argv in CLI_CASES.items():
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = run(argv)
        (HERE / "golden" / f"{name}.json").write_text(buf.getvalue())
        (HERE / "golden" / f"{name}.code").write_text(f"{code}\n")


if __name__ == "__main__":
    main()
