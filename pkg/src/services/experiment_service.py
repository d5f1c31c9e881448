from typing import List, Optional

import structlog

from models.experiment import ExperimentConfig, ResultRow, SystemKind
from models.surd import ParameterError
from models.tensor_element import TensorElement
from services.dynamics_service import DynamicsService
from services.group_service import GroupService
from services.joining_service import JoiningService


def evaluation(element) -> complex:
    """ev(x) = sum of coefficients, the value of x at u = v = ... = 1.

    Bounded by the one-norm, so |ev(x) - ev(y)| <= ||x - y||_1.
    """
    return complex(sum(c for _, c in element.terms()))


class ExperimentService:
    """Turns parsed experiment configs into convergence tables."""

    def __init__(
        self,
        dynamics: Optional[DynamicsService] = None,
        joinings: Optional[JoiningService] = None,
        group: Optional[GroupService] = None,
    ):
        self.logger = structlog.get_logger("ncergo.experiments")
        self.dynamics = dynamics or DynamicsService()
        self.joinings = joinings or JoiningService(self.dynamics)
        self.group = group or GroupService()

    def average_table(self, config: ExperimentConfig) -> List[ResultRow]:
        """ev of the ergodic average per region size, against ev of E(a)."""
        if config.system.kind is SystemKind.GROUP_DUAL:
            raise ParameterError("'average' needs a torus system; use 'group' for group_dual")
        spec = config.system.action_spec()
        element = config.require_element()
        limit = evaluation(self.dynamics.conditional_expectation(element, spec))
        rows = [
            ResultRow(region.size, evaluation(self.dynamics.ergodic_average(element, spec, region)), limit)
            for region in config.require_folner().regions()
        ]
        self.logger.info("Average table computed", rows=len(rows), source=config.source)
        return rows

    def disjoint_table(self, config: ExperimentConfig) -> List[ResultRow]:
        """Averaged coupling values against the target joining."""
        if not config.system.kind.tensor:
            raise ParameterError("'disjoint' needs a qtorus_pair or qtorus_mirror system")
        element = config.require_element()
        if not isinstance(element, TensorElement):
            raise ParameterError("'disjoint' needs a tensor observable")
        regions = config.require_folner().regions()
        return self.joinings.disjointness_average(
            config.functional(), element, config.system.action_spec(), regions
        )

    def group_table(self, config: ExperimentConfig) -> List[ResultRow]:
        """Correlation averages of the dual systems against mu(D(a) D(b))."""
        if config.system.kind is not SystemKind.GROUP_DUAL:
            raise ParameterError("'group' needs a group_dual system")
        if config.a is None or config.b is None:
            raise ParameterError("[observable] needs both 'a' and 'b' for group tables")
        sizes = config.require_folner().sizes
        if any(size.denominator != 1 for size in sizes):
            raise ParameterError("Group tables average over {1..N}; sizes must be integers")
        return self.group.conditional_limit_experiment(
            config.a, config.b, config.system.dual, [int(size) for size in sizes]
        )

    def table(self, subcommand: str, config: ExperimentConfig) -> List[ResultRow]:
        builders = {
            "average": self.average_table,
            "disjoint": self.disjoint_table,
            "group": self.group_table,
        }
        if subcommand not in builders:
            raise ParameterError(f"Unknown table subcommand '{subcommand}'")
        return builders[subcommand](config)
