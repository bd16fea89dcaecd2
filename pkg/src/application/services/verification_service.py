"""
Verification Service

The named verification suites behind `cm verify`. Each suite runs
independent computations against each other and returns a Report.
"""

import logging
import random
from typing import Callable, Dict, List, Optional, Sequence

from ...domain.exceptions import UsageError
from ...domain.models.algebra_config import LoadedAlgebra
from ...domain.models.report import GroupSummary, Report, Verdict
from ...domain.models.spectral import Bicomplex
from .algebra_service import AlgebraService
from .cyclic_service import CyclicService
from .goodwillie_service import STABILITY_FOLD, GoodwillieService
from .group_service import GroupService
from .kahler_service import KahlerService
from .milnor_service import MilnorService
from .spectral_service import SpectralService

logger = logging.getLogger(__name__)

SUITES = (
    "goodwillie-milnor",
    "bloch-k2",
    "hc1",
    "hc0",
    "vdk-d2",
    "keller-identities",
    "simplicial-identities",
    "periodicity",
    "sbi-shift",
    "specseq-convergence",
    "stability",
)

SINGLE_CONFIG_SUITES = ("goodwillie-milnor", "bloch-k2", "vdk-d2", "sbi-shift")


class VerificationService:
    """
    Runs verification suites over loaded algebras.

    Every suite returns a Report whose verdict is yes when all compared
    quantities agree. Suites with hypotheses report hypotheses-violated-*
    when a hypothesis fails but still carry out the comparison.
    """

    def __init__(self, algebras: AlgebraService, groups: GroupService, kahler: KahlerService,
                 cyclic: CyclicService, milnor: MilnorService, goodwillie: GoodwillieService,
                 spectral: SpectralService):
        self.algebras = algebras
        self.groups = groups
        self.kahler = kahler
        self.cyclic = cyclic
        self.milnor = milnor
        self.goodwillie = goodwillie
        self.spectral = spectral

    # ==================== Dispatch ====================

    def run(self, suite: str, targets: Sequence[LoadedAlgebra], n: Optional[int] = None,
            depth: Optional[int] = None, seed: Optional[int] = None,
            count: Optional[int] = None) -> Report:
        """
        Run one suite by name.

        Raises:
            UsageError: On an unknown suite or a wrong number of configs
        """
        if suite not in SUITES:
            raise UsageError(f"unknown suite {suite!r}; expected one of {', '.join(SUITES)}")
        if suite == "specseq-convergence":
            if targets:
                raise UsageError("specseq-convergence takes no config files")
            return self.specseq_convergence(seed=0 if seed is None else seed,
                                            count=25 if count is None else count)
        if not targets:
            raise UsageError(f"{suite} needs at least one config file")
        if suite in SINGLE_CONFIG_SUITES and len(targets) != 1:
            raise UsageError(f"{suite} takes exactly one config file")

        handlers: Dict[str, Callable[[], Report]] = {
            "goodwillie-milnor": lambda: self.goodwillie_milnor(targets[0], 1 if n is None else n),
            "bloch-k2": lambda: self.bloch_k2(targets[0]),
            "hc1": lambda: self.hc1(targets),
            "hc0": lambda: self.hc0(targets),
            "vdk-d2": lambda: self.vdk_d2(targets[0]),
            "keller-identities": lambda: self.keller_identities(targets, 3 if n is None else n),
            "simplicial-identities": lambda: self.simplicial_identities(targets, 4 if n is None else n),
            "periodicity": lambda: self.periodicity(targets, 2 if n is None else n),
            "sbi-shift": lambda: self.sbi_shift(targets[0], [n] if n is not None else [1, 2],
                                                5 if depth is None else depth),
            "stability": lambda: self.stability(targets, STABILITY_FOLD if n is None else n),
        }
        return handlers[suite]()

    @staticmethod
    def _inputs(targets: Sequence[LoadedAlgebra], **parameters) -> dict:
        data = {"configs": [t.config.to_dict() for t in targets]}
        data.update({k: v for k, v in parameters.items() if v is not None})
        return data

    # ==================== Relative Milnor K against differentials ====================

    def goodwillie_milnor(self, target: LoadedAlgebra, n: int = 1,
                          check: str = "goodwillie-milnor") -> Report:
        """K^M_(n+1)(R, I) against Ω^n_(R,I)/dΩ^(n-1)_(R,I) through φ and ψ."""
        pair = target.require_pair()
        result = self.goodwillie.goodwillie_milnor_check(pair, n)
        return Report(
            check=check,
            input=self._inputs([target], n=n),
            groups=[
                GroupSummary.from_group(f"K^M_{n + 1}(R,I)", result.milnor_side),
                GroupSummary.from_group(f"Omega^{n}_(R,I)/dOmega^{n - 1}_(R,I)", result.differential_side),
            ],
            hypotheses=dict(result.hypotheses),
            verdict=Verdict(result.verdict),
            details=result.to_dict(),
        )

    def bloch_k2(self, target: LoadedAlgebra) -> Report:
        """K^M_2(R, I) against Ω^1_(R,I)/dI."""
        return self.goodwillie_milnor(target, 1, check="bloch-k2")

    # ==================== Low-degree cyclic homology ====================

    def hc1(self, targets: Sequence[LoadedAlgebra]) -> Report:
        """HC_1 by both bicomplex routes against Ω^1/dR."""
        groups: List[GroupSummary] = []
        details: Dict[str, dict] = {}
        holds = True
        for target in targets:
            R = target.algebra
            via_cc = self.cyclic.hc(R, 1, route="cc")
            via_b = self.cyclic.hc(R, 1, route="tot_b")
            differentials = self.kahler.omega_absolute_mod_exact(R, 1)
            agree = via_cc.is_isomorphic(differentials) and via_b.is_isomorphic(differentials)
            holds = holds and agree
            groups += [
                GroupSummary.from_group(f"HC_1({target.name}) via cc", via_cc),
                GroupSummary.from_group(f"HC_1({target.name}) via tot_b", via_b),
                GroupSummary.from_group(f"Omega^1/dR({target.name})", differentials),
            ]
            details[target.name] = {"hc1": str(via_cc), "hc1_tot_b": str(via_b),
                                    "omega1_mod_exact": str(differentials), "agree": agree}
            logger.info(f"HC_1 against Ω^1/dR for {target.name}: {agree}")
        return Report("hc1", self._inputs(targets), groups, {}, Verdict.from_checks(holds), details)

    def hc0(self, targets: Sequence[LoadedAlgebra]) -> Report:
        """HC_0 = R for commutative R: the rank of HC_0 is dim R."""
        groups: List[GroupSummary] = []
        details: Dict[str, dict] = {}
        holds = True
        for target in targets:
            R = target.algebra
            group = self.cyclic.hc(R, 0)
            agree = group.free_rank == R.dim and not group.torsion
            holds = holds and agree
            groups.append(GroupSummary.from_group(f"HC_0({target.name})", group))
            details[target.name] = {"rank": group.free_rank, "dim": R.dim, "agree": agree}
        return Report("hc0", self._inputs(targets), groups, {}, Verdict.from_checks(holds), details)

    # ==================== K_2 against Dennis-Stein ====================

    def vdk_d2(self, target: LoadedAlgebra) -> Report:
        """K^M_2(R) against D_2(R); the comparison needs R 5-fold stable."""
        R = target.algebra
        hypotheses = {f"{STABILITY_FOLD}_fold_stable": self.algebras.is_m_fold_stable(R, STABILITY_FOLD)}
        milnor = self.milnor.milnor_k(R, 2)
        dennis_stein = self.milnor.dennis_stein_d2(R)
        holds = milnor.group.is_isomorphic(dennis_stein.group)
        logger.info(f"K^M_2 = {milnor.group}, D_2 = {dennis_stein.group} for {target.name}")
        return Report(
            check="vdk-d2",
            input=self._inputs([target]),
            groups=[GroupSummary.from_group("K^M_2(R)", milnor.group),
                    GroupSummary.from_group("D_2(R)", dennis_stein.group)],
            hypotheses=hypotheses,
            verdict=Verdict.from_checks(holds, all(hypotheses.values())),
            details={
                "milnor_relations": dict(milnor.relation_counts),
                "dennis_stein_relations": dict(dennis_stein.relation_counts),
                "dennis_stein_generators": len(dennis_stein.pairs),
            },
        )

    # ==================== Operator identities ====================

    def keller_identities(self, targets: Sequence[LoadedAlgebra], max_degree: int = 3) -> Report:
        """d^2 = 0, B^2 = 0 and dB + Bd = 0 on Keller's mixed complex."""
        assertions = 0
        failures: Dict[str, List[str]] = {}
        for target in targets:
            mixed = self.cyclic.keller_mixed_complex(target.algebra, max_degree)
            failed = []
            for n in range(max_degree + 1):
                for name, residual in mixed.identity_residuals(n):
                    assertions += 1
                    if not residual.is_zero():
                        failed.append(name)
            failures[target.name] = failed
        holds = not any(failures.values())
        logger.info(f"Keller identities: {assertions} assertions, holds={holds}")
        return Report("keller-identities", self._inputs(targets, max_degree=max_degree), [], {},
                      Verdict.from_checks(holds), {"assertions": assertions, "failures": failures})

    def simplicial_identities(self, targets: Sequence[LoadedAlgebra], max_degree: int = 4) -> Report:
        """Simplicial, cyclic and (b, B) identities as exact matrix equations."""
        assertions = 0
        failures: Dict[str, List[str]] = {}
        for target in targets:
            failed = []
            for name, residual in self.cyclic.operator_identities(target.algebra, max_degree):
                assertions += 1
                if not residual.is_zero():
                    failed.append(name)
            failures[target.name] = failed
        holds = not any(failures.values())
        logger.info(f"operator identities: {assertions} assertions, holds={holds}")
        return Report("simplicial-identities", self._inputs(targets, max_degree=max_degree), [], {},
                      Verdict.from_checks(holds), {"assertions": assertions, "failures": failures})

    # ==================== SBI sequences ====================

    def periodicity(self, targets: Sequence[LoadedAlgebra], n_max: int = 2) -> Report:
        """Exactness of Connes' periodicity sequence up to degree n_max."""
        groups: List[GroupSummary] = []
        details: Dict[str, list] = {}
        holds = True
        for target in targets:
            result = self.cyclic.connes_periodicity_check(target.target, n_max)
            holds = holds and result.exact
            for n in range(n_max + 1):
                groups.append(GroupSummary.from_group(f"HH_{n}({target.name})", result.hochschild[n]))
                groups.append(GroupSummary.from_group(f"HC_{n}({target.name})", result.cyclic[n]))
            details[target.name] = [joint.to_dict() for joint in result.joints]
        return Report("periodicity", self._inputs(targets, n_max=n_max), groups, {},
                      Verdict.from_checks(holds), details)

    def sbi_shift(self, target: LoadedAlgebra, degrees: Sequence[int], depth: int = 5) -> Report:
        """Relative HN_n against HC_(n-1) for a nilpotent pair over Q."""
        pair = target.require_pair()
        hypotheses = {"characteristic_zero": pair.ring.coefficients.characteristic == 0}
        groups: List[GroupSummary] = []
        details: Dict[str, dict] = {}
        holds = True
        for n in degrees:
            agree, hn, hc, stabilized = self.cyclic.sbi_shift_check(pair, n, depth)
            holds = holds and agree and stabilized
            groups.append(GroupSummary.from_group(f"HN_{n}(R,I)", hn))
            groups.append(GroupSummary.from_group(f"HC_{n - 1}(R,I)", hc))
            details[str(n)] = {"agree": agree, "stabilized": stabilized, "depth": depth}
        return Report("sbi-shift", self._inputs([target], degrees=list(degrees), depth=depth), groups,
                      hypotheses, Verdict.from_checks(holds, all(hypotheses.values())), details)

    # ==================== Stability ====================

    def stability(self, targets: Sequence[LoadedAlgebra], max_m: int = STABILITY_FOLD) -> Report:
        """Brute-force m-fold stability against the residue-field criterion for m <= max_m."""
        details: Dict[str, dict] = {}
        holds = True
        for target in targets:
            R = target.algebra
            rows = {}
            for m in range(1, max_m + 1):
                searched = self.algebras.is_m_fold_stable(R, m)
                predicted = self.algebras.stability_by_residue_field(R, m)
                rows[str(m)] = {"brute_force": searched, "residue_fields": predicted}
                holds = holds and searched == predicted
            details[target.name] = {"residue_fields": self.algebras.residue_field_orders(R), "m": rows}
        return Report("stability", self._inputs(targets, max_m=max_m), [], {},
                      Verdict.from_checks(holds), details)

    # ==================== Spectral sequences ====================

    def specseq_convergence(self, seed: int = 0, count: int = 25, max_size: int = 4,
                            max_page: int = 6) -> Report:
        """E_∞ of random bicomplexes against the filtration on total homology."""
        rng = random.Random(seed)
        runs = []
        holds = True
        for index in range(count):
            bc = Bicomplex.random(rng, max_size=max_size)
            couple = self.spectral.couple_from_bicomplex(bc)
            result = self.spectral.converges_check(couple, max_page=max_page)
            holds = holds and result.converges
            runs.append({"index": index, "bicomplex": bc.to_dict(), **result.to_dict(),
                         "converges": result.converges})
            logger.debug(f"bicomplex {index} ({bc}): converges={result.converges}")
        logger.info(f"{count} random bicomplexes from seed {seed}: converges={holds}")
        return Report("specseq-convergence", {"seed": seed, "count": count, "max_size": max_size},
                      [], {}, Verdict.from_checks(holds), {"bicomplexes": runs})
