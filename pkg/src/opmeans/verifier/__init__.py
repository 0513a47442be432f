"""Property-based verification of the connection axioms."""
from .engine import (ALL_CHECKS, AXIOM_SETS, CHECKS, FOUND, NOT_FOUND, NOT_RUN,
                     CheckResult, TrialConfig, VerificationReport,
                     check_order_isomorphism, check_property_F, replay_counterexample,
                     run_check, run_suite, trial_rng)
from .generators import (gen_commuting_pair, gen_pd, gen_projection, gen_psd,
                         haar_unitary)


def check_M1(conn, cfg=TrialConfig()):
    return run_check("M1", conn, cfg)


def check_M2(conn, cfg=TrialConfig()):
    return run_check("M2", conn, cfg)


def check_M3(conn, cfg=TrialConfig()):
    return run_check("M3", conn, cfg)


def check_M3prime(conn, cfg=TrialConfig()):
    return run_check("M3prime", conn, cfg)


def check_M3doubleprime(conn, cfg=TrialConfig()):
    return run_check("M3doubleprime", conn, cfg)


def check_M4(conn, cfg=TrialConfig()):
    return run_check("M4", conn, cfg)


def check_M4prime(conn, cfg=TrialConfig()):
    return run_check("M4prime", conn, cfg)


def check_property_P(conn, cfg=TrialConfig()):
    return run_check("P", conn, cfg)


def check_superadditivity(conn, cfg=TrialConfig()):
    return run_check("superadditivity", conn, cfg)
