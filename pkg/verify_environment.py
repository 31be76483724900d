#!/usr/bin/env python3
"""
Verify the bisectd environment setup.
Run this script to check if all dependencies are properly installed.
"""

import os
import sys
from pathlib import Path


def check_module(name, package=None):
    """Check if a module can be imported."""
    import_name = package or name
    try:
        module = __import__(import_name)
        version = getattr(module, "__version__", "unknown")
        print(f"  [OK] {name}: {version}")
        return True
    except ImportError as e:
        print(f"  [FAIL] {name}: MISSING ({e})")
        return False


def check_threads():
    """Check that BISECTD_THREADS, if set, is a non-negative integer."""
    raw = os.environ.get("BISECTD_THREADS")
    if raw is None or not raw.strip():
        print("  [OK] BISECTD_THREADS: not set (processing.num_workers is used)")
        return True
    if raw.strip().isdigit():
        print(f"  [OK] BISECTD_THREADS: {raw}")
        return True
    print(f"  [FAIL] BISECTD_THREADS: {raw!r} is not a non-negative integer")
    print("         Unset it or set it to a worker count, e.g.")
    print("           macOS/Linux: export BISECTD_THREADS=4")
    print("           Windows    : $env:BISECTD_THREADS = '4'")
    return False


def check_closure():
    """Run one conforming closure on the Kuhn square."""
    try:
        from src.forest import bisect_with_closure, is_conforming, new_forest
        from src.seed import kuhn_cube

        _, tria = new_forest(kuhn_cube(2))
        refined = bisect_with_closure(tria, 0)
        ok, violation = is_conforming(refined)
    except Exception as e:
        print(f"  [FAIL] Closure smoke test raised: {e}")
        return False
    if ok and len(refined) == 4:
        print("  [OK] Closure on kuhn2: 4 conforming leaves")
        return True
    print(f"  [FAIL] Closure on kuhn2 gave {len(refined)} leaves ({violation})")
    return False


def main():
    """Run environment verification checks."""
    print("=" * 60)
    print("bisectd - Environment Verification")
    print("=" * 60)
    print()

    all_ok = True

    # Check Python version
    print("[1/5] Python Version")
    py_version = sys.version_info
    print(f"  [OK] Python {py_version.major}.{py_version.minor}.{py_version.micro}")
    if py_version < (3, 8):
        print("  [FAIL] ERROR: Python 3.8+ required")
        all_ok = False
    print()

    # Check numeric packages
    print("[2/5] Numeric Packages")
    all_ok &= check_module("NumPy", "numpy")
    all_ok &= check_module("SciPy", "scipy")
    all_ok &= check_module("meshio", "meshio")
    print()

    # Check CLI and configuration
    print("[3/5] CLI and Configuration")
    all_ok &= check_module("Click", "click")
    all_ok &= check_module("PyYAML", "yaml")
    all_ok &= check_module("tqdm", "tqdm")
    print()

    print("[4/5] Environment Variables")
    all_ok &= check_threads()
    print()

    print("[5/5] Refinement Engine")
    all_ok &= check_closure()
    print()

    print("Project Files:")
    for name in ["src", "tests", "config.yaml"]:
        status = "[OK]" if Path(name).exists() else "[MISSING]"
        print(f"  {status} {name}")
    print()

    print("=" * 60)
    if all_ok:
        print("[SUCCESS] ALL CHECKS PASSED - Environment ready!")
        print()
        print("Next steps:")
        print("  1. bisectd seed kuhn --dim 3 --out cube.json")
        print("  2. bisectd refine cube.json --random 200 --rng 42 --out mesh.json")
        print("  3. bisectd verify mesh.json --suite grading")
        return 0
    else:
        print("[FAIL] SOME CHECKS FAILED - Please install missing dependencies")
        print()
        print("To install:")
        print('  pip install -e ".[dev]"')
        return 1


if __name__ == "__main__":
    sys.exit(main())
