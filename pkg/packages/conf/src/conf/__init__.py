from pathlib import Path
from dynaconf import Dynaconf

# Get the directory where this config file is located
settings_dir = Path(__file__).parent

settings = Dynaconf(
    envvar_prefix="PERCLAB",
    settings_files=[
        settings_dir / "settings.yaml",
        settings_dir / ".secrets.yaml",
    ],
    environments=True,
    load_dotenv=True,
    merge_enabled=True,
)


def get_log_level() -> str:
    """Get the root log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)."""
    return str(settings.get("logging.level", "INFO")).upper()


def get_worker_count() -> int:
    """
    Get the number of parallel workers used for trials and experiment rows.

    Read from ``PERCLAB_RUNNER__WORKERS`` when set. Values below one are
    treated as one (run inline).
    """
    return max(1, int(settings.get("runner.workers", 1)))


def get_max_trials() -> int:
    """Get the hard cap on Monte Carlo trials for a single row."""
    return int(settings.get("runner.max_trials", 100000))


def get_max_edges() -> int:
    """Get the largest edge count a runner row may build."""
    return int(settings.get("runner.max_edges", 5_000_000))


def get_row_timeout() -> float:
    """Get the wall-clock budget in seconds for one experiment row."""
    return float(settings.get("runner.row_timeout", 1200))


def get_trial_chunk() -> int:
    """Get the number of trials handed to a worker in one batch."""
    return max(1, int(settings.get("runner.trial_chunk", 50)))


def get_diameter_exact_limit() -> int:
    """Get the vertex count above which callers fall back to eccentricity."""
    return int(settings.get("graphs.diameter_exact_limit", 100000))


def get_certify_budget() -> int:
    """Get the largest group order that exact cover certification accepts."""
    return int(settings.get("progressions.certify_budget", 20000))


def get_brute_force_budget() -> int:
    """Get the maximum number of length vectors the brute-force oracle scans."""
    return int(settings.get("progressions.brute_force_budget", 200000))


def get_mc_sigma() -> float:
    """Get the number of standard errors used by CI-gated comparisons."""
    return float(settings.get("percolation.mc_sigma", 3.0))


def get_bisection_max_trials() -> int:
    """Get the trial cap for a single step of the stochastic bisection."""
    return int(settings.get("percolation.bisection_max_trials", 4000))


def get_dense_solver_limit() -> int:
    """Get the interior size up to which dense factorizations are used."""
    return int(settings.get("potential.dense_solver_limit", 4000))


def get_solver_tolerance() -> float:
    """Get the relative residual tolerance of the iterative solver."""
    return float(settings.get("potential.solver_tolerance", 1e-10))


def get_exhaustive_limit() -> int:
    """Get the largest vertex count for exhaustive subset enumeration."""
    return int(settings.get("isoperimetry.exhaustive_limit", 20))


def get_csc_constant() -> float:
    """Get the display normalization c(d) of the isoperimetric bound."""
    return float(settings.get("isoperimetry.csc_constant", 1.0))
