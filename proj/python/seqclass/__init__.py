from ._seqclass import (
    CURVE_COLUMNS,
    ConfigError,
    InsufficientData,
    LambdaSpec,
    ProblemInstance,
    bht_tradeoff,
    curve,
    e_fix,
    eta_n,
    gjs,
    kappa,
    kl,
    mu,
    nu,
    preset_exponents_json,
    renyi_frac,
    report,
    run_trials,
)

__all__ = [
    "CURVE_COLUMNS",
    "ConfigError",
    "InsufficientData",
    "LambdaSpec",
    "ProblemInstance",
    "bht_tradeoff",
    "curve",
    "e_fix",
    "eta_n",
    "gjs",
    "kappa",
    "kl",
    "mu",
    "nu",
    "preset_exponents_json",
    "renyi_frac",
    "report",
    "run_trials",
]
