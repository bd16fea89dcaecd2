"""
CLI Commands

One handler per computation subcommand. Handlers turn parsed arguments into
a Report; they never print.
"""

import logging
import random
from argparse import Namespace
from typing import Callable, Dict

from ...domain.exceptions import UsageError
from ...domain.models.algebra_config import LoadedAlgebra
from ...domain.models.report import GroupSummary, Report, Verdict
from ...domain.models.spectral import Bicomplex
from ...domain.validators.algebra_validator import AlgebraValidator
from ...infrastructure.container import Services

logger = logging.getLogger(__name__)


class CommandRunner:
    """Dispatches subcommands to services over a shared container."""

    def __init__(self, services: Services):
        self.services = services
        self._handlers: Dict[str, Callable[[Namespace], Report]] = {
            "algebra": self.algebra,
            "omega": self.omega,
            "hh": self.hh,
            "hc": self.hc,
            "hn": self.hn,
            "milnor": self.milnor,
            "dennis-stein": self.dennis_stein,
            "dlog": self.dlog,
            "verify": self.verify,
            "specseq-demo": self.specseq_demo,
        }

    @property
    def commands(self):
        return tuple(self._handlers)

    def run(self, args: Namespace) -> Report:
        handler = self._handlers.get(args.command)
        if handler is None:
            raise UsageError(f"unknown command {args.command!r}")
        return handler(args)

    # ==================== Helpers ====================

    def _load(self, args: Namespace) -> LoadedAlgebra:
        return self.services.load(args.config)

    @staticmethod
    def _target(loaded: LoadedAlgebra, relative: bool):
        return loaded.require_pair() if relative else loaded.algebra

    @staticmethod
    def _input(loaded: LoadedAlgebra, **parameters) -> dict:
        data = {"config": loaded.config.to_dict()}
        data.update({k: v for k, v in parameters.items() if v is not None})
        return data

    @staticmethod
    def _degree(args: Namespace) -> int:
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        return args.n

    # ==================== Algebra ====================

    def algebra(self, args: Namespace) -> Report:
        loaded = self._load(args)
        R = loaded.algebra
        algebras = self.services.algebras
        details: dict = {"dim": R.dim, "basis": list(R.basis_names)}
        groups = []
        hypotheses: Dict[str, bool] = {}
        if loaded.pair is not None:
            details["pair"] = loaded.pair.to_dict()
        if R.coefficients.is_finite:
            units = self.services.milnor.unit_group(R)
            groups.append(GroupSummary.from_group("R*", units.group))
            details["units"] = len(units.table)
            details["residue_fields"] = algebras.residue_field_orders(R)
            details["local"] = algebras.is_local(R)
            if args.stability is not None:
                if args.stability < 1:
                    raise UsageError("--stability must be at least 1")
                hypotheses[f"{args.stability}_fold_stable"] = algebras.is_m_fold_stable(R, args.stability)
                details["stability_by_residue_field"] = algebras.stability_by_residue_field(R, args.stability)
        elif args.stability is not None:
            raise UsageError("--stability needs finite coefficients")
        return Report("algebra", self._input(loaded, stability=args.stability), groups, hypotheses,
                      Verdict.YES, details)

    # ==================== Differentials ====================

    def omega(self, args: Namespace) -> Report:
        loaded = self._load(args)
        n = self._degree(args)
        kahler = self.services.kahler
        if args.relative:
            pair = loaded.require_pair()
            if args.mod_exact:
                group, name = kahler.omega_mod_exact(pair, n), f"Omega^{n}_(R,I)/dOmega^{n - 1}_(R,I)"
            else:
                group, name = kahler.relative_omega(pair, n).group, f"Omega^{n}_(R,I)"
        elif args.mod_exact:
            group, name = kahler.omega_absolute_mod_exact(loaded.algebra, n), f"Omega^{n}/dOmega^{n - 1}"
        else:
            module = kahler.omega(loaded.algebra, n)
            group, name = module.group, f"Omega^{n}"
        return Report("omega", self._input(loaded, n=n, relative=args.relative, mod_exact=args.mod_exact),
                      [GroupSummary.from_group(name, group)], {}, Verdict.YES, {})

    # ==================== Cyclic theories ====================

    def hh(self, args: Namespace) -> Report:
        loaded = self._load(args)
        n = self._degree(args)
        group = self.services.cyclic.hh(self._target(loaded, args.relative), n)
        name = f"HH_{n}(R,I)" if args.relative else f"HH_{n}"
        return Report("hh", self._input(loaded, n=n, relative=args.relative),
                      [GroupSummary.from_group(name, group)], {}, Verdict.YES, {})

    def hc(self, args: Namespace) -> Report:
        loaded = self._load(args)
        n = self._degree(args)
        group = self.services.cyclic.hc(self._target(loaded, args.relative), n, route=args.route)
        name = f"HC_{n}(R,I)" if args.relative else f"HC_{n}"
        return Report("hc", self._input(loaded, n=n, relative=args.relative, route=args.route),
                      [GroupSummary.from_group(name, group)], {}, Verdict.YES, {})

    def hn(self, args: Namespace) -> Report:
        loaded = self._load(args)
        n = self._degree(args)
        result = self.services.cyclic.hn_result(self._target(loaded, args.relative), n, args.depth)
        name = f"HN_{n}(R,I)" if args.relative else f"HN_{n}"
        return Report("hn", self._input(loaded, n=n, depth=args.depth, relative=args.relative),
                      [GroupSummary.from_group(name, result.group)], {}, Verdict.YES,
                      {"depth": result.depth, "stabilized": result.stabilized})

    # ==================== K-theory ====================

    def milnor(self, args: Namespace) -> Report:
        loaded = self._load(args)
        n = self._degree(args)
        milnor = self.services.milnor
        optimized = False if args.full else None
        if args.relative:
            group = milnor.milnor_k_relative(loaded.require_pair(), n, optimized=optimized)
            summary, details = GroupSummary.from_group(f"K^M_{n}(R,I)", group), {}
        else:
            presentation = milnor.milnor_k(loaded.algebra, n, extra_relations=args.extra_relations,
                                           optimized=optimized)
            summary = GroupSummary.from_group(f"K^M_{n}", presentation.group)
            details = presentation.to_dict()
        return Report("milnor", self._input(loaded, n=n, relative=args.relative, full=args.full,
                                            extra_relations=args.extra_relations),
                      [summary], {}, Verdict.YES, details)

    def dennis_stein(self, args: Namespace) -> Report:
        loaded = self._load(args)
        pair = loaded.require_pair() if args.relative else None
        presentation = self.services.milnor.dennis_stein_d2(loaded.algebra, relative_to=pair)
        name = "D_2(R,I)" if args.relative else "D_2"
        return Report("dennis-stein", self._input(loaded, relative=args.relative),
                      [GroupSummary.from_group(name, presentation.group)], {}, Verdict.YES,
                      presentation.to_dict())

    def dlog(self, args: Namespace) -> Report:
        loaded = self._load(args)
        R = loaded.algebra
        symbol = AlgebraValidator.parse_symbol(R, args.symbol)
        module = self.services.kahler.omega(R, len(symbol))
        coordinates = self.services.milnor.dlog(R, symbol)
        details = {
            "symbol": [str(x) for x in symbol],
            "coordinates": [str(c) for c in coordinates],
            "is_zero": not any(coordinates),
        }
        return Report("dlog", self._input(loaded, symbol=args.symbol),
                      [GroupSummary.from_group(f"Omega^{len(symbol)}", module.group)], {},
                      Verdict.YES, details)

    # ==================== Verification ====================

    def verify(self, args: Namespace) -> Report:
        targets = [self.services.load(path) for path in args.configs]
        return self.services.verification.run(args.suite, targets, n=args.n, depth=args.depth,
                                              seed=args.seed, count=args.count)

    def specseq_demo(self, args: Namespace) -> Report:
        spectral = self.services.spectral
        bc = Bicomplex.random(random.Random(args.seed))
        couple = spectral.couple_from_bicomplex(bc)
        result = spectral.converges_check(couple, max_page=args.max_page)
        pages = [spectral.page_of(couple, r).to_dict() for r in range(1, result.stable_page + 1)]
        groups = [GroupSummary.from_group(f"H^{n}(Tot)", group)
                  for n, group in sorted(result.total_homology.items())]
        return Report("specseq-demo", {"seed": args.seed, "max_page": args.max_page},
                      groups, {}, Verdict.from_checks(result.converges),
                      {"bicomplex": bc.to_dict(), "pages": pages, **result.to_dict()})
