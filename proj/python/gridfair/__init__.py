# Copyright 2026 The gridfair Authors.
# SPDX-License-Identifier: Apache-2.0

"""Provider-group fairness metrics for rankings in linear and grid layouts."""

from ._gridfair import (
    GridfairError,
    attention,
    awrf,
    eel,
    kendall_tau_b,
    rerank,
    run_cli,
)

__all__ = [
    "GridfairError",
    "attention",
    "awrf",
    "eel",
    "kendall_tau_b",
    "rerank",
    "run_cli",
]
