"""Módulo de validadores dos documentos JSON do Quantico."""

from quantico.validadores.corpo import corpo
from quantico.validadores.instancia import instancia
from quantico.validadores.prova import prova
from quantico.validadores.config import config

__all__ = ["corpo", "instancia", "prova", "config"]
