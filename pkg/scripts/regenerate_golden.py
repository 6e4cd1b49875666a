"""Rewrite tests/golden/*.json from the CLI.

Only run this after checking the new values by hand; the golden files are
the frozen reference for the bit-identity tests.
"""

import contextlib
import io
import pathlib

from frobmult.cli import main

ROOT = pathlib.Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden"

# (golden name, argv)
CASES = [
    ("regular_dutta", ["dutta", "problems/regular_koszul.json"]),
    ("regular_homology_0", ["homology", "problems/regular_koszul.json", "--degree", "0"]),
    ("regular_tasks", ["tasks", "problems/regular_koszul.json"]),
    ("node_decompose_1", ["decompose", "problems/node_xy.json", "--order", "1"]),
    ("node_chi", ["chi", "problems/node_xy.json"]),
    ("node_numvanishing", ["check-numvanishing", "problems/node_xy.json", "--x", "N", "--power", "3"]),
    ("node_tasks", ["tasks", "problems/node_xy.json"]),
    ("socle_canonical", ["canonical", "problems/artinian_socle.json"]),
    ("codim3_tasks", ["tasks", "problems/codim3_koszul.json"]),
]


def render(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf), _cwd(ROOT):
        code = main(argv)
    return buf.getvalue(), code


@contextlib.contextmanager
def _cwd(path):
    import os
    old = os.getcwd()
    os.chdir(path)
    try:
        yield
    finally:
        os.chdir(old)


if __name__ == "__main__":
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, argv in CASES:
        out, code = render(argv)
        (GOLDEN / f"{name}.json").write_text(out)
        print(f"{name}: exit {code}")
