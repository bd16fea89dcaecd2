"""
Service Container

Builds the wired service graph used by the CLI and the tests.
"""

from dataclasses import dataclass
from typing import Optional, Union

from ..application.interfaces.config_loader import IAlgebraConfigLoader
from ..application.interfaces.elimination_backend import IEliminationBackend
from ..application.services.algebra_service import AlgebraService
from ..application.services.cyclic_service import CyclicService
from ..application.services.goodwillie_service import GoodwillieService
from ..application.services.group_service import GroupService
from ..application.services.kahler_service import KahlerService
from ..application.services.milnor_service import MilnorService
from ..application.services.spectral_service import SpectralService
from ..application.services.verification_service import VerificationService
from ..domain.models.algebra import FinAlgebra
from ..domain.models.algebra_config import LoadedAlgebra
from ..domain.models.nilpotent_pair import SplitNilpotentPair
from .config.json_config_loader import JsonAlgebraConfigLoader
from .elimination.backend import ExactEliminationBackend


@dataclass
class Services:
    """Every service, sharing one backend and one set of caches."""
    backend: IEliminationBackend
    loader: IAlgebraConfigLoader
    groups: GroupService
    algebras: AlgebraService
    kahler: KahlerService
    cyclic: CyclicService
    milnor: MilnorService
    goodwillie: GoodwillieService
    spectral: SpectralService
    verification: VerificationService

    def load(self, path: str) -> LoadedAlgebra:
        return self.algebras.from_config(self.loader.load(path))


def build_services(backend: Optional[IEliminationBackend] = None,
                   loader: Optional[IAlgebraConfigLoader] = None) -> Services:
    backend = backend or ExactEliminationBackend()
    loader = loader or JsonAlgebraConfigLoader()
    groups = GroupService(backend)
    algebras = AlgebraService(backend)
    kahler = KahlerService(groups)
    cyclic = CyclicService(groups, backend)
    milnor = MilnorService(algebras, groups, kahler)
    goodwillie = GoodwillieService(algebras, groups, kahler, milnor)
    spectral = SpectralService(backend, cyclic)
    verification = VerificationService(algebras, groups, kahler, cyclic, milnor, goodwillie, spectral)
    return Services(backend, loader, groups, algebras, kahler, cyclic, milnor, goodwillie,
                    spectral, verification)


def load_algebra_config(path: str, services: Optional[Services] = None) -> Union[FinAlgebra, SplitNilpotentPair]:
    """
    The pair a config defines when it names an ideal, else its algebra.

    Raises:
        ParseError: With byte offset, line and column
        ConfigValidationError: Naming the violated invariant
    """
    services = services or build_services()
    return services.load(path).target
