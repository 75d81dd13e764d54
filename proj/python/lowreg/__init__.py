"""Low-regularity time integrators for NLS and semilinear wave equations on the torus."""

import json as _json

from ._lowreg import *  # noqa: F401,F403
from ._lowreg import __version__, run_convergence_study_json


def run_convergence_study(equation, taus, n_modes, **kwargs):
    """Run a convergence study and return the report as a dict."""
    return _json.loads(run_convergence_study_json(equation, taus, n_modes, **kwargs))
