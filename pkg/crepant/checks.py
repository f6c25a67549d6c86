"""
Fan checks
Registry of independent verifications run against a constructed junior fan
"""
import logging
from abc import ABC, abstractmethod
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Any, List, Optional, Sequence, Tuple

from sympy import Matrix

logger = logging.getLogger(__name__)


def cone_det(generators: Sequence[Sequence[int]], cone: Sequence[int]) -> int:
    """Exact determinant of the matrix whose rows are the cone's generators"""
    return int(Matrix([list(generators[i]) for i in cone]).det(method="bareiss"))


@dataclass
class CheckResult:
    """Outcome of one check; `cone` locates a counterexample"""
    name: str
    passed: bool
    detail: str = ""
    cone: Optional[Tuple[int, ...]] = None
    error: Optional[str] = None

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.cone is not None:
            data["cone"] = list(self.cone)
        if self.error is not None:
            data["error"] = self.error
        return data


@dataclass
class FanReport:
    """Results of all checks run against one fan"""
    label: str
    results: List[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def get(self, name: str) -> Optional[CheckResult]:
        for r in self.results:
            if r.name == name:
                return r
        return None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": self.label,
            "passed": self.passed,
            "checks": [r.to_dict() for r in self.results],
        }


class FanCheck(ABC):
    """Base class for fan checks"""

    def __init__(self):
        self.name = self.get_name()
        self.description = self.get_description()

    @abstractmethod
    def get_name(self) -> str:
        """Return the check name"""
        pass

    @abstractmethod
    def get_description(self) -> str:
        """Return the check description"""
        pass

    @abstractmethod
    def run(self, fan) -> CheckResult:
        """Run the check against a fan with `generators`, `cones`, `scale` and `dimension`"""
        pass


class BasicCheck(FanCheck):

    def get_name(self) -> str:
        return "basic"

    def get_description(self) -> str:
        return "every maximal cone has index 1 in N_G (|det| = l^(r-1) in scaled coordinates)"

    def run(self, fan) -> CheckResult:
        expected = fan.scale ** (fan.dimension - 1)
        coords = [g.coords for g in fan.generators]
        for cone in fan.cones:
            d = abs(cone_det(coords, cone))
            if d != expected:
                return CheckResult(self.name, False, f"|det| = {d}, expected {expected}", cone=tuple(cone))
        return CheckResult(self.name, True, f"{len(fan.cones)} cones with |det| = {expected}")


class CrepantCheck(FanCheck):

    def get_name(self) -> str:
        return "crepant"

    def get_description(self) -> str:
        return "every generator lies on the junior hyperplane"

    def run(self, fan) -> CheckResult:
        for idx, g in enumerate(fan.generators):
            if sum(g.coords) != fan.scale:
                return CheckResult(self.name, False, f"generator {idx} has coordinate sum {sum(g.coords)}",
                                   cone=(idx,))
        return CheckResult(self.name, True, f"{len(fan.generators)} generators of age 1")


class CoveringCheck(FanCheck):

    def get_name(self) -> str:
        return "covering"

    def get_description(self) -> str:
        return "normalized volumes of the maximal cones add up to l"

    def run(self, fan) -> CheckResult:
        unit = fan.scale ** (fan.dimension - 1)
        coords = [g.coords for g in fan.generators]
        total = 0
        for cone in fan.cones:
            d = abs(cone_det(coords, cone))
            if d % unit:
                return CheckResult(self.name, False, f"cone volume {d} is not a multiple of {unit}",
                                   cone=tuple(cone))
            total += d // unit
        if total != fan.scale:
            return CheckResult(self.name, False, f"volumes add up to {total}, expected {fan.scale}")
        return CheckResult(self.name, True, f"total normalized volume {total}")


class FacetCheck(FanCheck):

    def get_name(self) -> str:
        return "facets"

    def get_description(self) -> str:
        return "interior facets bound exactly two cones from opposite sides, boundary facets one"

    def run(self, fan) -> CheckResult:
        coords = [g.coords for g in fan.generators]
        sides: Dict[Tuple[int, ...], List[Tuple[int, Tuple[int, ...]]]] = defaultdict(list)
        for cone in fan.cones:
            for drop in cone:
                facet = tuple(sorted(i for i in cone if i != drop))
                sign = cone_det(coords, facet + (drop,))
                sides[facet].append((1 if sign > 0 else -1, tuple(cone)))

        for facet, seen in sides.items():
            on_boundary = any(all(coords[i][k] == 0 for i in facet) for k in range(fan.dimension))
            if on_boundary:
                if len(seen) != 1:
                    return CheckResult(self.name, False, f"boundary facet {facet} in {len(seen)} cones",
                                       cone=seen[0][1])
            elif len(seen) != 2 or seen[0][0] == seen[1][0]:
                return CheckResult(self.name, False, f"interior facet {facet} is not shared correctly",
                                   cone=seen[0][1])
        return CheckResult(self.name, True, f"{len(sides)} facets consistent")


class CheckRegistry:
    """Registry for managing fan checks"""

    def __init__(self):
        self.checks: Dict[str, FanCheck] = {}

    def register(self, check: FanCheck):
        self.checks[check.name] = check

    def get(self, name: str) -> Optional[FanCheck]:
        return self.checks.get(name)

    def get_all(self) -> List[FanCheck]:
        return list(self.checks.values())

    def run(self, name: str, fan) -> CheckResult:
        """Run one check; exceptions become failed results"""
        check = self.get(name)
        if not check:
            return CheckResult(name, False, error=f"Check not found: {name}")
        try:
            return check.run(fan)
        except Exception as e:
            logger.warning("check %s raised: %s", name, e)
            return CheckResult(name, False, error=f"Check failed: {str(e)}")

    def run_all(self, fan, label: str = "") -> FanReport:
        return FanReport(label, [self.run(name, fan) for name in self.checks])


def create_default_registry() -> CheckRegistry:
    """Create and populate the default check registry"""
    registry = CheckRegistry()
    registry.register(BasicCheck())
    registry.register(CrepantCheck())
    registry.register(CoveringCheck())
    registry.register(FacetCheck())
    return registry
