"""Python access to the asis solvers, bound recurrences and experiments."""

import json

from ._core import (
    AsisError,
    aq_order,
    experiment_names,
    majorizing_roots,
    method_names,
    newton_on_adim_poly,
    newton_sequences,
    problem_names,
    q_order,
    r_order,
    run_experiment_json,
    solve,
    steffensen_on_adim_poly,
    steffensen_sequences,
)


def run_experiment(experiment, **options):
    """Run a named experiment and return the parsed JSON result.

    Keyword options use the JSON config keys (``x0``, ``max_iter``, ``a``,
    ``K2``, ``methods`` and so on).
    """
    config = dict(options, experiment=experiment)
    return json.loads(run_experiment_json(json.dumps(config)))


__all__ = [
    "AsisError",
    "aq_order",
    "experiment_names",
    "majorizing_roots",
    "method_names",
    "newton_on_adim_poly",
    "newton_sequences",
    "problem_names",
    "q_order",
    "r_order",
    "run_experiment",
    "solve",
    "steffensen_on_adim_poly",
    "steffensen_sequences",
]
