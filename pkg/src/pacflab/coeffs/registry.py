"""
PACFLab Model Registry

Process models known to the library and the resolution of model
descriptions (builtin names, inline JSON, autocovariance CSV files).
"""

import json
from abc import ABC, abstractmethod
from functools import cached_property
from pathlib import Path
from typing import Any, ClassVar

import numpy as np
import pandas as pd
from pydantic import ValidationError

from pacflab.beta.kernels import beta_minus, beta_standard, farima_extension
from pacflab.beta.models import BetaSequence
from pacflab.coeffs.generators import (
    farima_ar_coeffs,
    farima_autocov,
    farima_ma_coeffs,
    psi_phi_coeffs,
)
from pacflab.coeffs.models import (
    CoefficientSequence,
    DecayClass,
    FarimaSpec,
    SequenceKind,
    TruncationPolicy,
)
from pacflab.core.config import get_settings
from pacflab.core.errors import ConfigError, DomainError, LengthError, ModelValidationError
from pacflab.core.logging import get_logger
from pacflab.szego.factorization import density_from_autocov, factorize, power_law_autocov
from pacflab.szego.models import CepstrumResult, SpectralGrid

logger = get_logger(__name__)


class ProcessModel(ABC):
    """
    A stationary process known through its coefficients or its covariance.

    Coefficient sequences are normalized so that the PACF is c_0-free;
    c0_sq recovers the innovation variance.
    """

    name: ClassVar[str]

    @property
    @abstractmethod
    def d(self) -> float:
        """Memory parameter governing the asymptotic class."""

    @property
    def c0_sq(self) -> float:
        return 1.0

    @abstractmethod
    def ma(self, n_max: int) -> CoefficientSequence:
        """MA coefficients c_0..c_n_max."""

    @abstractmethod
    def ar(self, n_max: int) -> CoefficientSequence:
        """AR coefficients a_0..a_n_max."""

    @abstractmethod
    def autocov(self, n_max: int) -> CoefficientSequence:
        """Autocovariance gamma_0..gamma_n_max."""

    @abstractmethod
    def beta(self, n_max: int, policy: TruncationPolicy) -> BetaSequence:
        """Kernel sequence feeding the PACF representation."""

    @abstractmethod
    def describe(self) -> dict[str, Any]:
        """Parameters echoed into run manifests."""


class FarimaModel(ProcessModel):
    """FARIMA(p, d, q) with closed-form coefficients."""

    name = "farima"

    def __init__(self, spec: FarimaSpec):
        self.spec = spec

    @property
    def d(self) -> float:
        return self.spec.d

    def ma(self, n_max: int) -> CoefficientSequence:
        return farima_ma_coeffs(self.spec, n_max)

    def ar(self, n_max: int) -> CoefficientSequence:
        return farima_ar_coeffs(self.spec, n_max)

    def autocov(self, n_max: int) -> CoefficientSequence:
        return farima_autocov(self.spec, n_max)

    def beta(self, n_max: int, policy: TruncationPolicy) -> BetaSequence:
        extension = farima_extension(self.spec)
        if self.spec.d < 0.0:
            psi, phi = psi_phi_coeffs(self.spec, n_max)
            return beta_minus(psi, phi, n_max, policy, extension=extension)
        return beta_standard(self.ma(n_max), self.ar(n_max), n_max, policy, extension=extension)

    def describe(self) -> dict[str, Any]:
        return {"model": self.name, **self.spec.describe()}


class WhiteNoiseModel(FarimaModel):
    """X_t = xi_t."""

    name = "white_noise"

    def __init__(self) -> None:
        super().__init__(FarimaSpec())


class CovarianceModel(ProcessModel):
    """
    A model given only by its autocovariance.

    MA and AR coefficients come from the cepstral factorization of the
    synthesized density; the number of usable coefficients is half the grid.
    """

    name = "autocov"

    def __init__(
        self,
        gamma: CoefficientSequence,
        d: float = 0.0,
        grid_size: int | None = None,
        tol: float | None = None,
    ):
        self.gamma = gamma
        self._d = d
        self.grid_size = grid_size or get_settings().szego.grid_size
        self.tol = tol

    @property
    def d(self) -> float:
        return self._d

    @cached_property
    def grid(self) -> SpectralGrid:
        return density_from_autocov(self.gamma, self.grid_size)

    @cached_property
    def factorization(self) -> CepstrumResult:
        result = factorize(self.grid, self.grid_size // 2 - 1, tol=self.tol)
        logger.info("covariance_model_factorized", residual=result.residual, grid_size=self.grid_size)
        return result

    @property
    def c0_sq(self) -> float:
        return self.factorization.c0_sq

    @property
    def available(self) -> int:
        return self.grid_size // 2 - 1

    def _coefficient_decay(self, kind: SequenceKind) -> DecayClass:
        return DecayClass.unknown()

    def _slice(self, seq: CoefficientSequence, n_max: int) -> CoefficientSequence:
        if n_max > self.available:
            raise LengthError(
                f"factorization provides {self.available + 1} coefficients, {n_max + 1} required",
                available=self.available,
                required=n_max,
            )
        return CoefficientSequence(
            values=seq.values[: n_max + 1],
            kind=seq.kind,
            decay=self._coefficient_decay(seq.kind),
        )

    def ma(self, n_max: int) -> CoefficientSequence:
        return self._slice(self.factorization.c, n_max)

    def ar(self, n_max: int) -> CoefficientSequence:
        return self._slice(self.factorization.a, n_max)

    def autocov(self, n_max: int) -> CoefficientSequence:
        return self.gamma.extend(n_max)

    def psi_phi(self, n_max: int) -> tuple[CoefficientSequence, CoefficientSequence]:
        """psi_n = sum_{k<=n} c_k and phi_n = a_{n-1} - a_n, phi_0 = -a_0."""
        c = self.factorization.c.values[: n_max + 1]
        a = self.factorization.a.values[: n_max + 1]
        psi = CoefficientSequence(
            values=np.cumsum(c),
            kind=SequenceKind.PSI,
            decay=self._coefficient_decay(SequenceKind.PSI),
        )
        phi = CoefficientSequence(
            values=np.concatenate(([-a[0]], a[:-1] - a[1:])),
            kind=SequenceKind.PHI,
            decay=self._coefficient_decay(SequenceKind.PHI),
        )
        return psi, phi

    def _bounded_policy(self, n_max: int, policy: TruncationPolicy) -> TruncationPolicy:
        room = self.available - n_max - 1
        if room < 1:
            raise LengthError(
                f"beta up to {n_max} needs a grid larger than {self.grid_size}",
                required=n_max,
                available=self.available,
            )
        inner = min(policy.inner_len, 1 << (room.bit_length() - 1))
        return policy.model_copy(update={"inner_len": inner})

    def beta(self, n_max: int, policy: TruncationPolicy) -> BetaSequence:
        bounded = self._bounded_policy(n_max, policy)
        if self.d < 0.0:
            psi, phi = self.psi_phi(self.available)
            return beta_minus(psi, phi, n_max, bounded)
        return beta_standard(self.ma(self.available), self.ar(self.available), n_max, bounded)

    def describe(self) -> dict[str, Any]:
        return {
            "model": self.name,
            "length": len(self.gamma),
            "grid_size": self.grid_size,
        }


class PowerLawCovarianceModel(CovarianceModel):
    """gamma_n = (1 + |n|)^(-(1 - 2d)), the regularly varying covariance class."""

    name = "power_law"

    def __init__(self, d: float, grid_size: int | None = None):
        super().__init__(power_law_autocov(d, 0), d=d, grid_size=grid_size)

    def _coefficient_decay(self, kind: SequenceKind) -> DecayClass:
        # d = 0 carries slowly varying factors; the power part still governs the tails
        exponents = {
            SequenceKind.MA: 1.0 - self.d,
            SequenceKind.AR: 1.0 + self.d,
            SequenceKind.PSI: -self.d,
            SequenceKind.PHI: 2.0 + self.d,
        }
        exponent = exponents[kind]
        if exponent <= 0.0:
            return DecayClass.unknown()
        return DecayClass.power_law(exponent)

    def describe(self) -> dict[str, Any]:
        return {"model": self.name, "d": self.d, "grid_size": self.grid_size}


def load_autocov_csv(path: Path) -> CoefficientSequence:
    """Read gamma from a CSV file with columns n, gamma."""
    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.ParserError) as exc:
        raise ConfigError(f"cannot read autocovariance file {path}: {exc}", path=str(path)) from exc
    if not {"n", "gamma"} <= set(frame.columns):
        raise ModelValidationError("autocovariance CSV needs columns n and gamma", path=str(path))
    frame = frame.sort_values("n")
    if not np.array_equal(frame["n"].to_numpy(), np.arange(len(frame))):
        raise ModelValidationError("autocovariance CSV must list n = 0, 1, 2, ... without gaps", path=str(path))
    try:
        return CoefficientSequence(values=frame["gamma"].to_numpy(dtype=float), kind=SequenceKind.AUTOCOV)
    except ValidationError as exc:
        raise ModelValidationError(f"invalid autocovariance: {exc.errors()[0]['msg']}", path=str(path)) from exc


class ModelRegistry:
    """
    Registry of builtin process models.

    Maps builtin names to model classes and resolves the model strings
    accepted on the command line.
    """

    _models: ClassVar[dict[str, type[ProcessModel]]] = {}

    @classmethod
    def register(cls, name: str, model_class: type[ProcessModel]) -> None:
        cls._models[name] = model_class

    @classmethod
    def list_models(cls) -> list[str]:
        return sorted(cls._models)

    @classmethod
    def is_registered(cls, name: str) -> bool:
        return name in cls._models

    @classmethod
    def create(cls, name: str, **params: Any) -> ProcessModel:
        """
        Instantiate a builtin model.

        Raises:
            ConfigError: If the name is unknown or a required parameter is missing
            ModelValidationError: If the parameters do not define a valid process
        """
        model_class = cls._models.get(name)
        if model_class is None:
            raise ConfigError(
                f"No builtin model named {name!r}. Available models: {cls.list_models()}",
                model=name,
            )
        try:
            if model_class is WhiteNoiseModel:
                return WhiteNoiseModel()
            if issubclass(model_class, FarimaModel):
                return model_class(FarimaSpec(**{k: v for k, v in params.items() if v is not None}))
            if model_class is PowerLawCovarianceModel:
                if params.get("d") is None:
                    raise ConfigError("builtin:power_law requires --d", model=name)
                return PowerLawCovarianceModel(params["d"], grid_size=params.get("grid_size"))
            return model_class(**params)
        except ValidationError as exc:
            raise ModelValidationError(f"invalid {name} parameters: {exc.errors()[0]['msg']}", model=name) from exc
        except (ValueError, DomainError) as exc:
            raise ModelValidationError(str(exc), model=name) from exc

    @classmethod
    def resolve(
        cls,
        model: str,
        d: float | None = None,
        phi: list[float] | None = None,
        theta: list[float] | None = None,
        grid_size: int | None = None,
    ) -> ProcessModel:
        """
        Resolve `builtin:<name>`, an inline JSON FarimaSpec or a CSV path.

        Flags given explicitly override the corresponding JSON fields.
        """
        text = model.strip()
        if text.startswith("builtin:"):
            name = text.removeprefix("builtin:")
            if name == "power_law":
                return cls.create(name, d=d, grid_size=grid_size)
            return cls.create(name, d=d, phi=phi, theta=theta)
        if text.startswith("{"):
            try:
                fields = json.loads(text)
            except json.JSONDecodeError as exc:
                raise ConfigError(f"model JSON is not valid: {exc}", model=text) from exc
            if not isinstance(fields, dict):
                raise ConfigError("model JSON must be an object", model=text)
            overrides = {"d": d, "phi": phi, "theta": theta}
            fields.update({k: v for k, v in overrides.items() if v is not None})
            return cls.create("farima", **fields)
        path = Path(text)
        if path.suffix.lower() == ".csv":
            if not path.exists():
                raise ConfigError(f"autocovariance file {path} does not exist", path=str(path))
            tol = get_settings().szego.factorization_tol
            return CovarianceModel(load_autocov_csv(path), d=d or 0.0, grid_size=grid_size, tol=tol)
        raise ConfigError(
            f"cannot interpret model {model!r}; use builtin:<name>, JSON or a CSV path",
            model=model,
        )


ModelRegistry.register(FarimaModel.name, FarimaModel)
ModelRegistry.register(PowerLawCovarianceModel.name, PowerLawCovarianceModel)
ModelRegistry.register(WhiteNoiseModel.name, WhiteNoiseModel)
