"""Acceptance suite: the twelve built-in audit presets, one test per
criterion.  Run with -v to get one pass/fail line per criterion; each test
also prints the measured residuals for the record."""

import pytest

from morawetzlab.harness.audits import AUDITS


def _run(name):
    res = AUDITS[name]()
    print(res.summary_line())
    assert res.passed, res.summary_line()


def test_criterion_01_conservation_kerr():
    _run("conservation")


def test_criterion_02_energy_change_audit():
    _run("eg2")


def test_criterion_03_flat_multiplier_identity():
    _run("flat-multiplier")


def test_criterion_04_trapping():
    _run("trapping")


def test_criterion_05_radial_momentum_monotone():
    _run("monotonicity")


def test_criterion_06_mode_energy_conservation():
    _run("mode-energy")


def test_criterion_07_morawetz_identity():
    _run("morawetz-identity")


def test_criterion_08_empirical_bulk_bound():
    _run("morawetz-bound")


def test_criterion_09_complex_potential_balance():
    _run("complex-balance")


def test_criterion_10_blended_generator():
    _run("tchi")


def test_criterion_11_strengthened_energies():
    _run("strengthened")


def test_criterion_12_local_energy_decay():
    _run("local-decay")
