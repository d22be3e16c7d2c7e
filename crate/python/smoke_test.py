"""Smoke test for the globcat_py extension.

Build first:
    cargo build -p globcat-py --features extension-module
then run:
    python3 python/smoke_test.py [path/to/libglobcat_py.so]
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def find_library():
    if len(sys.argv) > 1:
        return pathlib.Path(sys.argv[1])
    for profile in ("release", "debug"):
        for name in ("libglobcat_py.so", "libglobcat_py.dylib", "globcat_py.dll"):
            candidate = ROOT / "target" / profile / name
            if candidate.exists():
                return candidate
    sys.exit("globcat_py library not found; build it with cargo first")


def load(path):
    loader = importlib.machinery.ExtensionFileLoader("globcat_py", str(path))
    spec = importlib.util.spec_from_file_location("globcat_py", path, loader=loader)
    module = importlib.util.module_from_spec(spec)
    loader.exec_module(module)
    return module


def main():
    gc = load(find_library())

    sphere = gc.Category.fiedorowicz()
    assert sphere.homology(3) == ["Z", "0", "Z", "0"], sphere.homology(3)

    p2 = gc.Category.poset(2)
    assert (p2.num_objects, p2.num_morphisms) == (3, 6)
    assert p2.is_poset() and not p2.is_strongly_connected()
    again = gc.Category.from_json(p2.to_json())
    assert again.num_morphisms == 6

    bc2 = gc.Category.classifying("C2")
    fun = bc2.functor_category(bc2)
    assert (fun.num_objects, fun.num_morphisms) == (2, 4)

    report = json.loads(gc.hom_groupoid_report("C2", "S3"))
    assert report["pi0"] == 2 and report["pi0_matches"]

    data = ROOT / "crates" / "cli" / "tests" / "data"
    ok, cert = gc.check_dwyer((data / "source.json").read_text())
    assert ok and json.loads(cert)["cosieve"] == ["0", "1"]
    ok, why = gc.check_dwyer((data / "target.json").read_text())
    assert not ok and why

    assoc = gc.assemble((data / "complex.json").read_text())
    rebuilt = json.loads(gc.reconstruct(assoc))
    assert rebuilt["elements"] == ["x", "y"]
    json.loads(gc.reconstruct(assoc, seed=5))

    try:
        gc.Category.from_json((data / "bad.json").read_text())
    except gc.GlobcatError as e:
        assert "associative" in str(e)
    else:
        raise AssertionError("bad category accepted")

    print("globcat_py smoke test passed")


if __name__ == "__main__":
    main()
