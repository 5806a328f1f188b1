#!/usr/bin/env python3
"""
Verify Framework Installation
=============================
Checks that the toolkit imports and reproduces a few known values.

Run this script to diagnose any setup issues:
    python verify_framework.py
"""

import os
import sys
from fractions import Fraction


def check_python_version():
    """Check Python version."""
    print("🔍 Checking Python version...")
    version = sys.version_info
    if version.major < 3 or (version.major == 3 and version.minor < 10):
        print(f"❌ Python 3.10+ required. Found: {version.major}.{version.minor}")
        return False
    print(f"✅ Python {version.major}.{version.minor}.{version.micro}")
    return True


def check_package(module: str, pip_name: str):
    """Check that a third-party package imports."""
    print(f"\n🔍 Checking {pip_name}...")
    try:
        imported = __import__(module)
        print(f"✅ {pip_name} {getattr(imported, '__version__', '')}".rstrip())
        return True
    except ImportError as e:
        print(f"❌ {pip_name} not installed: {e}")
        print(f"   Run: pip install {pip_name}")
        return False


def check_env_file():
    """Check if .env file exists."""
    print("\n🔍 Checking .env file...")
    env_file = os.path.join(os.path.dirname(__file__), ".env")
    if os.path.exists(env_file):
        print("✅ .env file exists")
        return True
    print("⚠️  .env file not found (defaults will be used)")
    print("   Run: ./setup.sh")
    return False


def check_local_modules():
    """Check local module imports and settings."""
    print("\n🔍 Checking local modules...")
    try:
        project_root = os.path.dirname(os.path.abspath(__file__))
        sys.path.insert(0, project_root)

        from src.hii_principal.config import get_settings
        settings = get_settings()
        print(f"✅ config (default q = {settings.default_q}, |W| limit = {settings.max_weyl_order})")

        from src.hii_principal.hii import named_types
        print(f"✅ hii module ({len(named_types(2))} types in the rank-2 sweep)")

        from src.main import build_parser
        build_parser()
        print("✅ main module")
        return True
    except (ImportError, ValueError) as e:
        print(f"❌ Import error: {e}")
        print("   Run: pip install -e .")
        return False


def check_known_values():
    """Reproduce the PGL2 and Sp4 right-hand sides at q = 3."""
    print("\n🔍 Checking known values...")
    try:
        from src.hii_principal.hii import BlockInput, hii_rhs

        pgl2 = hii_rhs(BlockInput.from_dict({"datum": "A1", "lattice": "ad", "q": "3"}))
        if pgl2.rhs_squared != Fraction(81, 64):
            print(f"❌ PGL2: rhs^2 = {pgl2.rhs_squared}, expected 81/64")
            return False
        print("✅ PGL2 Steinberg: rhs^2 = 81/64")

        sp4 = hii_rhs(BlockInput.from_dict({
            "datum": "C2", "lattice": "sc", "q": "3",
            "inertial": {"levels": [[["1/2", "1/2"]], []]},
        }))
        if sp4.s_sharp != 4 or sp4.volumes.ratio != 81:
            print(f"❌ Sp4: |S#| = {sp4.s_sharp}, ratio = {sp4.volumes.ratio}, expected 4 and 81")
            return False
        print("✅ Sp4 quadratic block: |S#| = 4, volume ratio = 81")
        return True
    except Exception as e:
        print(f"❌ Error computing known values: {e}")
        return False


def main():
    """Run all checks."""
    print("=" * 60)
    print("📐 HII Principal Series - Framework Verification")
    print("=" * 60)

    results = []
    results.append(("Python Version", check_python_version()))
    results.append(("numpy", check_package("numpy", "numpy")))
    results.append(("sympy", check_package("sympy", "sympy")))
    results.append(("python-dotenv", check_package("dotenv", "python-dotenv")))
    results.append((".env File", check_env_file()))
    results.append(("Local Modules", check_local_modules()))
    results.append(("Known Values", check_known_values()))

    print("\n" + "=" * 60)
    print("📋 Verification Summary")
    print("=" * 60)

    critical_checks = ["Python Version", "numpy", "sympy", "python-dotenv", "Local Modules", "Known Values"]
    passed = 0
    critical_passed = 0

    for name, result in results:
        icon = "✅" if result else "❌" if name in critical_checks else "⚠️"
        status = "PASS" if result else "FAIL" if name in critical_checks else "WARN"
        print(f"  {icon} {name}: {status}")
        if result:
            passed += 1
            if name in critical_checks:
                critical_passed += 1

    print(f"\nResult: {passed}/{len(results)} checks passed ({critical_passed}/{len(critical_checks)} critical)")

    if critical_passed == len(critical_checks):
        print("\n🎉 All critical checks passed! Toolkit is ready to use.")
        print("\n" + "-" * 60)
        print("Quick Start:")
        print("-" * 60)
        print("  python src/main.py list-types")
        print("  python src/main.py hii-rhs blocks/pgl2_steinberg.json")
        print("  python src/main.py verify --max-rank 2 --trials 50")
        print("-" * 60)
        return 0
    print("\n⚠️  Some critical checks failed. Please resolve issues above.")
    return 1


if __name__ == "__main__":
    sys.exit(main())
