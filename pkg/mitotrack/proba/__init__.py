"""Probability distributions."""
from .erlang import Erlang
from .erlang import erlang_cdf


__all__ = ['Erlang', 'erlang_cdf']
