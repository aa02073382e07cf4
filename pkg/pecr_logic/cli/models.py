"""
Command line configuration objects
"""
from dataclasses import dataclass

from django.conf import settings


@dataclass(frozen=True)
class ProverConfig:
    """
    Budgets of the bounded prover
    """
    depth: int
    facts: int
    time: int
    seed: int = 0

    @classmethod
    def default(cls) -> 'ProverConfig':
        return cls(**settings.PECR_PROVER)
