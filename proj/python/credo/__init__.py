"""Python access to the credo strength engine.

Every call goes through the same request executor as the command line, so
a request dict here is exactly what a session file records.
"""

import json

from . import _credo
from ._credo import CredoError, scenario_names, session_version

__all__ = [
    "CredoError",
    "compare",
    "event_family",
    "execute",
    "replay",
    "run_scenario",
    "scenario",
    "scenario_names",
    "session_version",
]


def execute(request):
    """Runs one request dict and returns {"request", "result", "passed", "text"}."""
    return json.loads(_credo.execute(json.dumps(request)))


def run_scenario(name, calibration=None):
    request = {"op": "scenario", "name": name}
    if calibration is not None:
        request["calibration"] = calibration
    return execute(request)


def compare(f, g, mode="internal", **fields):
    return execute({"op": "compare", "mode": mode, "f": f, "g": g, **fields})["result"]


def event_family(distribution, lam, **params):
    return json.loads(_credo.event_family(json.dumps(distribution), str(lam), json.dumps(params)))


def scenario(name):
    return json.loads(_credo.scenario(name))


def replay(session):
    text, entries, mismatches = _credo.replay(json.dumps(session))
    return {"text": text, "entries": entries, "mismatches": mismatches}
