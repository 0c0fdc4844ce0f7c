# Copyright (c) allendl contributors.
# SPDX-License-Identifier: Apache-2.0
"""Qualitative temporal reasoning over Allen's interval algebra.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from allendl._core import (
    DiffEngine,
    Qcn,
    __version__,
    backbone,
    closure,
    compose,
    converse,
    default_hard_pool,
    enumerate_scenarios,
    generate_a,
    generate_h,
    oracle,
    parse,
    serialize,
    solve,
    union_labels,
)

__all__ = [
    "DiffEngine",
    "Qcn",
    "__version__",
    "backbone",
    "closure",
    "compose",
    "converse",
    "default_hard_pool",
    "enumerate_scenarios",
    "generate_a",
    "generate_h",
    "oracle",
    "parse",
    "serialize",
    "solve",
    "union_labels",
]
