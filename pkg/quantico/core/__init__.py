"""Módulo core com classes base, exceções, cliente HTTP e geradores do Quantico."""

from quantico.core.aleatorio import count_outcomes, keyed_rng, make_rng, run_trials, spawn_streams
from quantico.core.base import BaseValidator
from quantico.core.http import HTTPClient, http_client
from quantico.core.exceptions import (
    ConfigurationError,
    DegenerateLineError,
    DomainError,
    InvalidInstance,
    InvalidModulus,
    InvalidProof,
    ParameterError,
    QuanticoException,
    ResourceError,
    SourceError,
    UnsatisfiedAssignment,
    ValidationError,
)

__all__ = [
    "BaseValidator",
    "HTTPClient",
    "http_client",
    "make_rng",
    "spawn_streams",
    "run_trials",
    "count_outcomes",
    "keyed_rng",
    "QuanticoException",
    "ValidationError",
    "ParameterError",
    "InvalidModulus",
    "DegenerateLineError",
    "DomainError",
    "ResourceError",
    "InvalidInstance",
    "InvalidProof",
    "ConfigurationError",
    "UnsatisfiedAssignment",
    "SourceError",
]
