"""Módulo de protocolos: estados quânticos, recuperação, teste de baixo grau e QPCP."""

from quantico.protocolos.qsim import QuantumState, build_qlde_state
from quantico.protocolos.retrieve import Verdict, adversary_suite, run_r1, run_r2
from quantico.protocolos.ldt import LineOracle, qldt_accept_exact, qldt_accept_sampled
from quantico.protocolos.qpcp import GapInstance, ProofBlocks, build_correct_proof, verify_once

__all__ = [
    "QuantumState",
    "build_qlde_state",
    "Verdict",
    "adversary_suite",
    "run_r1",
    "run_r2",
    "LineOracle",
    "qldt_accept_exact",
    "qldt_accept_sampled",
    "GapInstance",
    "ProofBlocks",
    "build_correct_proof",
    "verify_once",
]
