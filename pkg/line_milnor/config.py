from dataclasses import dataclass

from latch_config.config import read_config


@dataclass(frozen=True)
class EngineConfig:
    iteration_budget: int = 1_000_000
    n_max: int = 64
    k_limit: int = 40
    sweep_length: int = 3
    oracle_n_max: int = 14
    seed: int = 0


config = read_config(EngineConfig, "milnor_")
