"""Exact verifier for invariant log 2-jet differentials on three-conic configurations."""

import json

from ._conicjet import (
    ConfigError,
    ConicjetError,
    UnsupportedConfiguration,
    exceptional_pairs,
    jacobian_cubic,
    unknown_count,
    version,
)
from . import _conicjet

__all__ = [
    "ConfigError",
    "ConicjetError",
    "UnsupportedConfiguration",
    "enumerate_pairs",
    "exceptional_pairs",
    "jacobian_cubic",
    "thresholds",
    "tower",
    "unknown_count",
    "verify",
    "version",
]


def verify(m, t, *, conics="fermat", prime=5, charts=("Z0", "Z2"), parallel=False, threads=4,
           full_substitution=False, export_matrix=""):
    """Assemble and eliminate; returns the report as a dict."""
    return json.loads(_conicjet._verify(conics, m, t, prime, list(charts), parallel, threads,
                                        full_substitution, export_matrix))


def thresholds(degrees=(3, 2, 2), m=None, t=None):
    return json.loads(_conicjet._thresholds(list(degrees), m, t))


def enumerate_pairs(c="5", m_max=20):
    return json.loads(_conicjet._enumerate(str(c), m_max))


def tower():
    return json.loads(_conicjet._tower())
