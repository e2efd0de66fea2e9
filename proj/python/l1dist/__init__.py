"""Manhattan distances between uniform random points of the unit hypercube."""

import json as _json

from ._l1dist import *  # noqa: F401,F403
from ._l1dist import __version__, run_experiment_json


def run_experiment(**kwargs):
    """Run the dimension sweep and return the report as a dict."""
    return _json.loads(run_experiment_json(**kwargs))
