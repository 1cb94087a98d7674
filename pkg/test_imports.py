#!/usr/bin/env python3
"""Test all imports to ensure no circular dependencies or missing modules."""
from __future__ import annotations

import __future__
import importlib
import sys

MODULES = ("config", "algebra", "roots", "homext", "tilting", "complex", "measure", "fixtures", "reports", "service", "cli")


def _check_imports() -> list[str]:
	errors = []

	try:
		from cluster_complex.config import get_settings
		print("✓ config")
	except Exception as e:
		errors.append(f"config: {e}")

	try:
		from cluster_complex.algebra import build_algebra, euler_form
		print("✓ algebra")
	except Exception as e:
		errors.append(f"algebra: {e}")

	try:
		from cluster_complex.roots import build_catalog, positive_roots, rank2_sequences
		print("✓ roots")
	except Exception as e:
		errors.append(f"roots: {e}")

	try:
		from cluster_complex.homext import HomExtOracle
		print("✓ homext")
	except Exception as e:
		errors.append(f"homext: {e}")

	try:
		from cluster_complex.tilting import TiltingCalculator
		print("✓ tilting")
	except Exception as e:
		errors.append(f"tilting: {e}")

	try:
		from cluster_complex.complex import build_complex, rank2_window_complex
		print("✓ complex")
	except Exception as e:
		errors.append(f"complex: {e}")

	try:
		from cluster_complex.measure import descent_step, verify_descent
		print("✓ measure")
	except Exception as e:
		errors.append(f"measure: {e}")

	try:
		from cluster_complex.service import ClusterComplexService
		print("✓ service")
	except Exception as e:
		errors.append(f"service: {e}")

	try:
		from cluster_complex.cli import app, run
		print("✓ cli")
	except Exception as e:
		errors.append(f"cli: {e}")

	return errors


def test_imports():
	"""Test critical imports."""
	assert _check_imports() == []


def test_modules_postpone_annotations():
	for name in MODULES:
		module = importlib.import_module(f"cluster_complex.{name}")
		assert getattr(module, "annotations", None) is __future__.annotations, name


def main() -> int:
	errors = _check_imports()
	if errors:
		print("\n❌ Errors found:")
		for error in errors:
			print(f"  - {error}")
		return 1

	print("\n✅ All imports successful!")
	return 0


if __name__ == "__main__":
	sys.exit(main())
