"""Experiment configuration schema and builders for the engine types.

An experiment config is a JSON document with the blocks ``model``, ``penalties``, ``sim``,
``init``, ``strategies``, ``comparisons`` and ``output``. Unknown keys are rejected.
"""

import importlib
import logging
from collections.abc import Callable
from typing import Annotated, Any, Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator
from pydantic import ValidationError as PydanticValidationError

from stochimpact_cli.cli.exceptions import ValidationError
from stochimpact_cli.src.engine.model import (
    DiffusionSpec,
    ImpactFunction,
    MarketModel,
    PenaltyParams,
    Regime,
    feller_check,
)
from stochimpact_cli.src.engine.simulation import InitialState, SimConfig
from stochimpact_cli.src.engine.strategy import StrategyFamily, StrategyKind


logger = logging.getLogger("stochimpact.config")


class _Block(BaseModel):
    model_config = ConfigDict(extra="forbid")


class LinearImpactSpec(_Block):
    kind: Literal["linear"]
    slope: float = 1.0
    intercept: float = 0.0


class PolynomialImpactSpec(_Block):
    kind: Literal["polynomial"]
    coefficients: list[float] = Field(..., min_length=1, description="Ascending powers")


class UserImpactSpec(_Block):
    kind: Literal["user"]
    value: str = Field(..., description="'module:attribute' of the impact function")
    derivative: str = Field(..., description="'module:attribute' of its derivative")
    sample_points: list[float] = Field(default_factory=list)


ImpactSpec = Annotated[
    LinearImpactSpec | PolynomialImpactSpec | UserImpactSpec, Field(discriminator="kind")
]


class CirDynamicsSpec(_Block):
    kind: Literal["cir"]
    mean_reversion: float = Field(..., gt=0)
    long_run_mean: float = Field(..., gt=0)
    vol_of_vol: float = Field(..., gt=0)


class UserDynamicsSpec(_Block):
    kind: Literal["user"]
    drift: str
    diffusion: str


class ConstantDynamicsSpec(_Block):
    kind: Literal["constant"]


AnyDynamics = CirDynamicsSpec | UserDynamicsSpec | ConstantDynamicsSpec
DynamicsSpec = Annotated[AnyDynamics, Field(discriminator="kind")]


class ModelBlock(_Block):
    temporary_impact: ImpactSpec
    permanent_impact: ImpactSpec
    temporary_dynamics: DynamicsSpec
    permanent_dynamics: DynamicsSpec
    rho: float = Field(0.0, ge=-1.0, le=1.0)
    sigma: float = Field(..., ge=0.0)


class PenaltiesBlock(_Block):
    kappa: float = Field(..., gt=0)
    phi: float = Field(..., ge=0)
    T: float = Field(..., gt=0)
    regime: Regime = Regime.NONLIMITING

    @model_validator(mode="after")
    def phi_positive_outside_phi_zero(self) -> "PenaltiesBlock":
        if self.phi == 0 and self.regime is not Regime.KAPPA_INFINITY_PHI_ZERO:
            raise ValueError(f"phi must be > 0 in regime {self.regime.value}")
        return self


class SimBlock(_Block):
    n_steps: int = Field(1000, ge=2)
    master_seed: int = Field(0, ge=0, lt=2**64)
    M: int = Field(10000, ge=1)
    force_final_liquidation: bool = True


class InitBlock(_Block):
    X0: float = 0.0
    S0: float
    Q0: float
    a0: float | None = Field(None, description="Defaults to the CIR long-run mean")
    b0: float | None = Field(None, description="Defaults to the CIR long-run mean")


class StrategyEntry(_Block):
    name: str | None = None
    kind: StrategyFamily
    no_buy: bool = False
    frozen_a: float | None = None
    frozen_b: float | None = None

    @model_validator(mode="after")
    def frozen_pair_only_for_almgren_chriss(self) -> "StrategyEntry":
        has_frozen = self.frozen_a is not None or self.frozen_b is not None
        if has_frozen and self.kind is not StrategyFamily.ALMGREN_CHRISS:
            raise ValueError(f"{self.kind.value} does not take frozen_a/frozen_b")
        return self


class OutputBlock(_Block):
    dir: str | None = None


class ExperimentConfig(_Block):
    """Validated experiment description."""

    name: str | None = None
    description: str | None = None
    model: ModelBlock
    penalties: PenaltiesBlock
    sim: SimBlock = Field(default_factory=SimBlock)
    init: InitBlock
    strategies: list[StrategyEntry] = Field(..., min_length=1)
    comparisons: list[tuple[str, str]] | None = None
    output: OutputBlock = Field(default_factory=OutputBlock)

    @model_validator(mode="after")
    def comparisons_reference_strategies(self) -> "ExperimentConfig":
        names = set(self.strategy_names())
        for pair in self.comparisons or []:
            for name in pair:
                if name not in names:
                    raise ValueError(f"comparison references unknown strategy '{name}'")
        return self

    def strategy_names(self) -> list[str]:
        """Explicit names, or the kind (with ``_nobuy``); duplicates get a numeric suffix."""
        names: list[str] = []
        for entry in self.strategies:
            base = entry.name or (entry.kind.value + ("_nobuy" if entry.no_buy else ""))
            name, suffix = base, 2
            while name in names:
                name, suffix = f"{base}_{suffix}", suffix + 1
            names.append(name)
        return names

    def comparison_pairs(self) -> list[tuple[str, str]]:
        if self.comparisons is not None:
            return [tuple(pair) for pair in self.comparisons]
        names = self.strategy_names()
        return list(zip(names, names[1:]))

    def build_model(self) -> MarketModel:
        block = self.model
        return MarketModel(
            f=build_impact(block.temporary_impact, "model.temporary_impact"),
            g=build_impact(block.permanent_impact, "model.permanent_impact"),
            a_dyn=build_dynamics(block.temporary_dynamics, "model.temporary_dynamics"),
            b_dyn=build_dynamics(block.permanent_dynamics, "model.permanent_dynamics"),
            rho=block.rho,
            sigma=block.sigma,
        )

    def build_penalties(self) -> PenaltyParams:
        p = self.penalties
        return PenaltyParams(kappa=p.kappa, phi=p.phi, T=p.T, regime=p.regime)

    def build_sim(self) -> SimConfig:
        return SimConfig(
            n_steps=self.sim.n_steps,
            master_seed=self.sim.master_seed,
            force_final_liquidation=self.sim.force_final_liquidation,
        )

    def build_init(self) -> InitialState:
        a0 = _default_level(self.init.a0, self.model.temporary_dynamics, "init.a0")
        b0 = _default_level(self.init.b0, self.model.permanent_dynamics, "init.b0")
        return InitialState(x0=self.init.X0, s0=self.init.S0, q0=self.init.Q0, a0=a0, b0=b0)

    def build_strategies(self) -> dict[str, StrategyKind]:
        """Name -> kind in config order; Almgren-Chriss freezes the long-run means by default."""
        init = self.build_init()
        frozen_a = _long_run(self.model.temporary_dynamics, init.a0)
        frozen_b = _long_run(self.model.permanent_dynamics, init.b0)
        kinds: dict[str, StrategyKind] = {}
        for name, entry in zip(self.strategy_names(), self.strategies):
            match entry.kind:
                case StrategyFamily.ALMGREN_CHRISS:
                    kind = StrategyKind.almgren_chriss(
                        entry.frozen_a if entry.frozen_a is not None else frozen_a,
                        entry.frozen_b if entry.frozen_b is not None else frozen_b,
                        no_buy=entry.no_buy,
                    )
                case StrategyFamily.HOLD:
                    kind = StrategyKind.hold()
                case family:
                    kind = StrategyKind(family, no_buy=entry.no_buy)
            kinds[name] = kind
        return kinds

    def feller_warnings(self) -> list[str]:
        warnings = []
        for label, spec in (
            ("temporary_dynamics", self.model.temporary_dynamics),
            ("permanent_dynamics", self.model.permanent_dynamics),
        ):
            if isinstance(spec, CirDynamicsSpec) and not feller_check(
                build_dynamics(spec, f"model.{label}")
            ):
                warnings.append(
                    f"model.{label} violates the Feller condition 2*lambda*theta > sigma_v**2"
                )
        return warnings


def _long_run(spec: AnyDynamics, fallback: float) -> float:
    return spec.long_run_mean if isinstance(spec, CirDynamicsSpec) else fallback


def _default_level(
    value: float | None,
    spec: AnyDynamics,
    field: str,
) -> float:
    if value is not None:
        return value
    if isinstance(spec, CirDynamicsSpec):
        return spec.long_run_mean
    raise ValidationError(f"{field} is required for non-CIR dynamics", field=field)


def load_callable(path: str, field: str) -> Callable[..., Any]:
    """Resolve a ``module:attribute`` path to a callable."""
    if path.count(":") != 1:
        raise ValidationError(
            f"Invalid callable path '{path}'. Expected 'module:attribute'.", field=field
        )
    module_name, attribute = path.split(":")
    try:
        target = getattr(importlib.import_module(module_name), attribute)
    except (ImportError, AttributeError) as e:
        raise ValidationError(f"Cannot load '{path}': {e}", field=field) from e
    if not callable(target):
        raise ValidationError(f"'{path}' is not callable", field=field)
    return target


def build_impact(
    spec: LinearImpactSpec | PolynomialImpactSpec | UserImpactSpec, field: str
) -> ImpactFunction:
    match spec:
        case LinearImpactSpec():
            return ImpactFunction.linear(spec.slope, spec.intercept)
        case PolynomialImpactSpec():
            return ImpactFunction.polynomial(spec.coefficients)
        case UserImpactSpec():
            return ImpactFunction.user_defined(
                load_callable(spec.value, f"{field}.value"),
                load_callable(spec.derivative, f"{field}.derivative"),
                spec.sample_points,
            )


def build_dynamics(
    spec: AnyDynamics, field: str
) -> DiffusionSpec:
    match spec:
        case CirDynamicsSpec():
            return DiffusionSpec.cir(spec.mean_reversion, spec.long_run_mean, spec.vol_of_vol)
        case UserDynamicsSpec():
            return DiffusionSpec.user_defined(
                load_callable(spec.drift, f"{field}.drift"),
                load_callable(spec.diffusion, f"{field}.diffusion"),
            )
        case ConstantDynamicsSpec():
            return DiffusionSpec.constant()


def _config_location(loc: tuple[Any, ...], data: Any) -> str:
    """Dotted config path of a pydantic error location, without discriminator tags."""
    parts: list[str] = []
    node = data
    for part in loc:
        if isinstance(node, dict) and part not in node and node.get("kind") == part:
            continue
        parts.append(str(part))
        try:
            node = node[part]
        except (KeyError, IndexError, TypeError):
            node = None
    return ".".join(parts) or "config"


def parse_experiment(data: Any) -> ExperimentConfig:
    """Validate decoded config data.

    Raises:
        ValidationError: Naming the dotted location of the first invalid field.
    """
    try:
        config = ExperimentConfig.model_validate(data)
    except PydanticValidationError as e:
        first = e.errors()[0]
        location = _config_location(first["loc"], data)
        raise ValidationError(f"{location}: {first['msg']}", field=location) from e
    for warning in config.feller_warnings():
        logger.warning(warning)
    return config
