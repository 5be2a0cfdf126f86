"""Verifiable weighted ramp secret sharing over ristretto255."""

from ._core import (
    Opening,
    Params,
    WvssError,
    derive_params,
    group_order,
    openings_from_json,
    openings_to_json,
    reconstruct,
    secrecy_distance,
    share,
    verify,
    weight_cap,
)

__all__ = [
    "Opening",
    "Params",
    "WvssError",
    "derive_params",
    "group_order",
    "openings_from_json",
    "openings_to_json",
    "reconstruct",
    "secrecy_distance",
    "share",
    "verify",
    "weight_cap",
]
