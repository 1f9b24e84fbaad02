"""Módulo de experimentos: configuração, estatística, demonstração e linha de comando."""

from quantico.bench.config import EXPERIMENTS, MODES, ExperimentConfig

__all__ = ["EXPERIMENTS", "MODES", "ExperimentConfig"]
