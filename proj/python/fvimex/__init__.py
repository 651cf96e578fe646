"""Finite-volume IMEX Runge-Kutta solver for two-dimensional option-pricing PDEs."""

from ._core import (
    ConfigError,
    FvimexError,
    basket_price,
    black_scholes_call,
    converge,
    greeks,
    heston_price,
    preset,
    reference,
    solve,
)

__all__ = [
    "ConfigError",
    "FvimexError",
    "basket_price",
    "black_scholes_call",
    "converge",
    "greeks",
    "heston_price",
    "preset",
    "reference",
    "solve",
]
