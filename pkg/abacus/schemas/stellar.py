from __future__ import annotations

from typing import List, Optional, Tuple

from pydantic import BaseModel

from abacus.core.errors import InvalidArgument
from abacus.services.symmetric.stellar import StarConfiguration, StellarPoint, canonical_order


class StarPayload(BaseModel):
    alpha: Tuple[float, float]      # [re, im]
    beta: Tuple[float, float]
    zeta: Optional[Tuple[float, float]] = None   # informative only; null at the pole

    @classmethod
    def from_point(cls, p: StellarPoint) -> "StarPayload":
        zeta = None if p.is_pole else (p.zeta.real, p.zeta.imag)
        return cls(alpha=(p.alpha.real, p.alpha.imag), beta=(p.beta.real, p.beta.imag), zeta=zeta)

    def to_point(self) -> StellarPoint:
        return StellarPoint(alpha=complex(*self.alpha), beta=complex(*self.beta))


class StarConfigurationPayload(BaseModel):
    k: int
    scale_re: float = 1.0
    scale_im: float = 0.0
    stars: List[StarPayload]

    @classmethod
    def from_configuration(cls, cfg: StarConfiguration) -> "StarConfigurationPayload":
        return cls(
            k=cfg.k,
            scale_re=cfg.scale.real,
            scale_im=cfg.scale.imag,
            stars=[StarPayload.from_point(s) for s in cfg.stars],
        )

    def to_configuration(self) -> StarConfiguration:
        if self.k != len(self.stars):
            raise InvalidArgument(f"k={self.k} but {len(self.stars)} stars were given")
        return StarConfiguration(
            stars=canonical_order(s.to_point() for s in self.stars),
            scale=complex(self.scale_re, self.scale_im),
        )


class PolynomialPayload(BaseModel):
    k: int
    re: List[float]      # a_k .. a_0
    im: List[float]
