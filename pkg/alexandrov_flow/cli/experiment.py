"""This module contains the experiments run by the command line: one class per experiment
with its command and configuration entries, and the group that finds an experiment by
its command."""

import logging
import math
from dataclasses import dataclass, field
from typing import Any, Type

from alexandrov_flow.cli.entry import (
    CountEntry,
    Entry,
    IntervalEntry,
    MappingEntry,
    MatrixEntry,
    NumberEntry,
    NumberListEntry,
    OneOfEntry,
    PositiveNumberEntry,
)
from alexandrov_flow.curvature import default_region, quadruple_test, triangle_comparison_test
from alexandrov_flow.flow import (
    CURVE_CSV_HEADER,
    FlowParams,
    build_sllc_certificate,
    check_arrival,
    check_contraction,
    default_field,
    integrate,
)
from alexandrov_flow.model_trig import CDParams
from alexandrov_flow.plateau import (
    DiskMap,
    EnergyReport,
    LambdaMeasure,
    LoopMap,
    energy_certificate,
    energy_ladder,
    fill_loop,
)
from alexandrov_flow.ricci import Density1D, bg_check, cd_star_check, random_density, simplicial_volume_pipeline
from alexandrov_flow.semiconcave import Region, field_from_dict, verify_concavity
from alexandrov_flow.spaces import Space, SpacePoint
from alexandrov_flow.utils.errors import ConfigError
from alexandrov_flow.utils.utils import make_rng, spawn_rngs, spawn_seeds

logger = logging.getLogger(__name__)

Table = tuple[list[str], list[list[Any]]]

FLOW_ENTRIES: list[Entry] = [
    IntervalEntry("params.eps", "must lie in (0, π/6)", 0.0, math.pi / 6.0, optional=True),
    IntervalEntry("params.delta0", "must lie in (0, 1)", 0.0, 1.0, optional=True),
    PositiveNumberEntry("params.R", "must be a positive number", optional=True),
    PositiveNumberEntry("params.lambda", "must be a positive number", optional=True),
    PositiveNumberEntry("params.step_tol", "must be a positive number", optional=True),
    PositiveNumberEntry("params.max_step", "must be a positive number", optional=True),
    PositiveNumberEntry("params.min_step", "must be a positive number", optional=True),
    CountEntry("params.resolution", "must be a nonnegative integer", optional=True),
    MappingEntry("params.center", "must be a point {r, phi}", optional=True),
]
CD_ENTRIES: list[Entry] = [
    NumberEntry("params.K", "must be a number"),
    NumberEntry("params.N", "must be a number of at least 1"),
]


@dataclass
class ExperimentResult:
    """What an experiment produced.

    Args:
        report (dict[str, Any]): JSON report.
        passed (bool): True if every asserted property holds.
        tables (dict[str, Table]): CSV tables by name, as (header, rows).
    """

    report: dict[str, Any]
    passed: bool
    tables: dict[str, Table] = field(default_factory=dict)


class Experiment:
    """This is a base class for experiments, should be registered in an ExperimentGroup.
    Each experiment has a _command attribute, the entries of its parameter block and
    flags telling whether it samples randomly and whether it needs a space.

    Args:
        config (dict[str, Any]): Validated configuration.

    Public Methods:
        run() -> ExperimentResult: Runs the experiment. Must be implemented in the child class.

    Examples:
        ```python
        from alexandrov_flow.cli.experiment import Experiment, ExperimentResult

        class BoundExperiment(Experiment):
            _command = "bound"
            _sampling = False
            _needs_space = False

            def run(self) -> ExperimentResult:
                ...
        ```
    """

    _command: str | None = None
    _entries: list[Entry] | None = None
    _sampling: bool = True
    _needs_space: bool = True
    _default_space: dict[str, Any] | None = None
    _tol: float = 1e-4

    def __init__(self, config: dict[str, Any]):
        self._config = config
        self._params: dict[str, Any] = dict(config.get("params") or {})
        self._seed = int(config.get("seed") or 0)
        self._tol = float((config.get("tolerances") or {}).get("tol", self._tol))
        space = config.get("space") or self._default_space
        self._space = Space.from_dict(space) if space is not None else None

    @classmethod
    def command(cls) -> str | None:
        """Returns the command of the experiment.

        Returns:
            str | None: Command."""
        return cls._command

    @classmethod
    def entries(cls) -> list[Entry]:
        """Returns the entries of the parameter block.

        Returns:
            list[Entry]: Entries."""
        return list(cls._entries or [])

    @classmethod
    def diagnose(cls, config: dict[str, Any]) -> list[str]:
        """Returns the diagnostics of the parameter block. Child classes extend it with the
        checks a single entry can't express.

        Args:
            config (dict[str, Any]): Configuration.

        Returns:
            list[str]: Empty if the parameter block is fine."""
        return [message for entry in cls.entries() for message in entry.diagnose(config)]

    @classmethod
    def sampling(cls) -> bool:
        """Returns True if the experiment draws random samples and needs a seed.

        Returns:
            bool: Whether a seed is mandatory."""
        return cls._sampling

    @classmethod
    def needs_space(cls) -> bool:
        """Returns True if the configuration must describe a space.

        Returns:
            bool: Whether a space is mandatory."""
        return cls._needs_space and cls._default_space is None

    @property
    def space(self) -> Space:
        """Returns the space of the experiment.

        Returns:
            Space: The space."""
        if self._space is None:
            raise ConfigError(["space: missing required field"])
        return self._space

    @property
    def seed(self) -> int:
        """Returns the seed.

        Returns:
            int: Seed."""
        return self._seed

    @property
    def tol(self) -> float:
        """Returns the tolerance of the asserted properties.

        Returns:
            float: Tolerance."""
        return self._tol

    def param(self, key: str, default: Any = None) -> Any:
        """Returns a parameter of the experiment.

        Args:
            key (str): Key in the parameter block.
            default (Any, optional): Value when missing. Defaults to None.

        Returns:
            Any: The value."""
        return self._params.get(key, default)

    def point(self, key: str = "center") -> SpacePoint:
        """Returns a point parameter {r, phi}, the apex when missing.

        Args:
            key (str, optional): Key in the parameter block. Defaults to "center".

        Returns:
            SpacePoint: The point."""
        raw = self._params.get(key)
        if raw is None:
            return self.space.apex
        return self.space.point(float(raw.get("r", 0.0)), float(raw.get("phi", 0.0)))

    def flow_params(self) -> FlowParams:
        """Returns the flow parameters of the parameter block.

        Returns:
            FlowParams: Parameters."""
        return FlowParams.from_dict(self._params)

    def cd_params(self) -> CDParams:
        """Returns the curvature-dimension parameters of the parameter block.

        Returns:
            CDParams: Parameters."""
        return CDParams(float(self._params["K"]), float(self._params["N"]))

    def run(self) -> ExperimentResult:
        """Runs the experiment. Must be implemented in the child class.

        Returns:
            ExperimentResult: Report, verdict and tables."""
        raise NotImplementedError


class SllcExperiment(Experiment):
    """Certificate that the flow homotopy contracts B(p, δ₀R) to p."""

    _command = "sllc"
    _entries = FLOW_ENTRIES + [
        CountEntry("params.samples", "must be a nonnegative integer", optional=True),
        PositiveNumberEntry("params.r", "must be a positive number", optional=True),
    ]

    def run(self) -> ExperimentResult:
        params = self.flow_params()
        p = self.point()
        certificate = build_sllc_certificate(
            self.space, p, params, int(self.param("samples", 2000)), self.seed, self.param("r"), self.tol
        )
        start = self.space.exp(p, 0.0, certificate.r) if certificate.r > 0 else p
        curve = integrate(default_field(self.space, p, params), start, params.ell, params)
        report = {"params": params.to_dict(), "certificate": certificate.to_dict()}
        return ExperimentResult(
            report, certificate.passed, {"curve": (list(CURVE_CSV_HEADER), [list(row) for row in curve.to_csv_rows()])}
        )


class ContractionExperiment(Experiment):
    """Flow contraction e^{λs} and arrival at the center for seeded starts."""

    _command = "contraction"
    _entries = FLOW_ENTRIES + [
        CountEntry("params.starts", "must be a nonnegative integer", optional=True),
        NumberListEntry("params.s_grid", "must be a list of positive times", optional=True, positive=True),
    ]

    def run(self) -> ExperimentResult:
        params = self.flow_params()
        p = self.point()
        f = default_field(self.space, p, params)
        starts = int(self.param("starts", 20))
        s_grid = [float(s) for s in self.param("s_grid", [0.01, 0.02, 0.05])]
        pool = self.space.sample_ball(p, params.delta0 * params.R, make_rng(self.seed), 2 * starts)
        contraction = None
        for x, y in zip(pool[0::2], pool[1::2]):
            checked = check_contraction(f, x, y, s_grid, params, self.tol)
            contraction = checked if contraction is None else contraction.merge(checked)
        arrival = check_arrival(f, p, pool, params, self.tol)
        passed = arrival.passed and (contraction is None or contraction.passed)
        report = {
            "params": params.to_dict(),
            "contraction": contraction.to_dict() if contraction is not None else None,
            "arrival": arrival.to_dict(),
        }
        rows = [list(row) for row in contraction.rows] if contraction is not None else []
        return ExperimentResult(report, passed, {"contraction": (["s", "distance", "bound"], rows)})


class ConcavityExperiment(Experiment):
    """λ-concavity of a field on an annulus."""

    _command = "concavity"
    _entries = [
        MappingEntry("params.field", "must be a field descriptor", optional=True),
        NumberEntry("params.kappa", "must be a number", optional=True),
        PositiveNumberEntry("params.r_max", "must be a positive number", optional=True),
        NumberEntry("params.r_min", "must be a number", optional=True),
        CountEntry("params.samples", "must be a nonnegative integer", optional=True),
        PositiveNumberEntry("params.step", "must be a positive number", optional=True),
    ]
    _tol = 1e-6

    def run(self) -> ExperimentResult:
        f = field_from_dict(self.space, self.param("field", {"kind": "dist_from_set", "points": [{"r": 0.0}]}))
        region = Region(self.point(), float(self.param("r_max", 1.0)), float(self.param("r_min", 0.5)))
        kappa = float(self.param("kappa", self.space.curvature_lower_bound))
        report = verify_concavity(
            f,
            region,
            kappa,
            int(self.param("samples", 1000)),
            self.tol,
            self.seed,
            float(self.param("step", 1e-3)),
        )
        return ExperimentResult({"field": f.to_dict(), "report": report.to_dict()}, report.passed)


DEFAULT_MATRIX = [
    {"space": {"kind": "euclidean_cone", "theta_total": 1.5 * math.pi}, "kappa": 0.0},
    {"space": {"kind": "euclidean_cone", "theta_total": 2.0 * math.pi}, "kappa": 0.0},
    {"space": {"kind": "model_plane", "kappa": -1.0}, "kappa": -1.0},
    {"space": {"kind": "model_plane", "kappa": 0.0}, "kappa": 0.0},
    {"space": {"kind": "model_plane", "kappa": 1.0}, "kappa": 1.0},
    {"space": {"kind": "spherical_cone", "theta_total": 1.5 * math.pi}, "kappa": 1.0},
    {"space": {"kind": "euclidean_cone", "theta_total": 2.5 * math.pi}, "kappa": 0.0, "expect": "fail"},
]
VERDICT_HEADER = [
    "space",
    "kind_value",
    "kappa",
    "test",
    "seed",
    "tested",
    "skipped",
    "worst_margin",
    "passed",
    "expect",
    "matches",
]


class CurvatureExperiment(Experiment):
    """Triangle comparison and quadruple tests over a matrix of (space, κ) pairs. A row may
    expect the tests to fail; the run passes when every verdict matches its expectation."""

    _command = "curvature"
    _needs_space = False
    _entries = [
        CountEntry("params.samples", "must be a nonnegative integer", optional=True),
        MatrixEntry(
            "params.matrix",
            'must be a nonempty list of {"space": {...}, "kappa": number, "expect": "pass" | "fail"}',
            optional=True,
        ),
    ]
    _tol = 1e-9

    @classmethod
    def diagnose(cls, config: dict[str, Any]) -> list[str]:
        diagnostics = super().diagnose(config)
        if diagnostics:
            return diagnostics
        for index, row in enumerate((config.get("params") or {}).get("matrix") or []):
            try:
                Space.from_dict(row["space"])
            except ConfigError as error:
                diagnostics.extend(f"params.matrix[{index}].{message}" for message in error.diagnostics)
        return diagnostics

    def run(self) -> ExperimentResult:
        matrix = self.param("matrix", DEFAULT_MATRIX)
        samples = int(self.param("samples", 2000))
        seeds = iter(spawn_seeds(self.seed, 2 * len(matrix)))
        rows = []
        reports = []
        passed = True
        for item in matrix:
            space = Space.from_dict(item["space"])
            kappa = float(item.get("kappa", space.curvature_lower_bound))
            expect = item.get("expect", "pass")
            region = default_region(space)
            for test in (triangle_comparison_test, quadruple_test):
                report = test(space, region, kappa, samples, next(seeds))
                verdict = report.passed(self.tol)
                matches = verdict == (expect == "pass")
                passed = passed and matches
                if not matches:
                    logger.warning("%s on %r at κ=%s: expected to %s", report.test, space, kappa, expect)
                value = space.kappa if space.kind == "model_plane" else space.theta_total
                rows.append(
                    [
                        space.kind,
                        value,
                        kappa,
                        report.test,
                        report.seed,
                        report.tested,
                        report.skipped,
                        report.worst_margin,
                        verdict,
                        expect,
                        matches,
                    ]
                )
                reports.append(
                    {"space": space.to_dict(), **report.to_dict(), "passed": verdict, "expect": expect, "matches": matches}
                )
        return ExperimentResult({"matrix": reports}, passed, {"verdicts": (VERDICT_HEADER, rows)})


class BgExperiment(Experiment):
    """Bishop–Gromov monotonicity of ball volumes at one or more centers."""

    _command = "bg"
    _sampling = False
    _entries = CD_ENTRIES + [
        NumberListEntry("params.radii", "must be increasing positive radii", optional=True, increasing=True, positive=True)
    ]
    _tol = 1e-6

    def run(self) -> ExperimentResult:
        params = self.cd_params()
        radii = self.param("radii", [round(0.1 * k, 10) for k in range(1, 31)])
        raw_centers = self.param("centers")
        centers = (
            [self.space.point(float(c.get("r", 0.0)), float(c.get("phi", 0.0))) for c in raw_centers]
            if raw_centers
            else [self.point()]
        )
        reports = [bg_check(self.space, center, params, radii, self.tol) for center in centers]
        rows = [[index, *row] for index, report in enumerate(reports) for row in report.to_csv_rows()]
        return ExperimentResult(
            {"checks": [report.to_dict() for report in reports]},
            all(report.passed for report in reports),
            {"bg": (["center", "r", "volume", "ratio"], rows)},
        )


class Cd1dExperiment(Experiment):
    """Reduced curvature-dimension inequality on the line for density pairs."""

    _command = "cd1d"
    _entries = CD_ENTRIES + [
        NumberListEntry("params.t_grid", "must be a list of times", optional=True),
        NumberListEntry("params.n_prime", "must be a list of exponents", optional=True),
        CountEntry("params.pairs", "must be a nonnegative integer", optional=True),
    ]
    _tol = 1e-8

    def densities(self) -> list[tuple[Density1D, Density1D]]:
        """Returns the density pairs: explicit ones, or seeded random ones.

        Returns:
            list[tuple[Density1D, Density1D]]: Pairs."""
        explicit = self.param("densities")
        if explicit:
            return [
                (Density1D(first["grid"], first["values"], True), Density1D(second["grid"], second["values"], True))
                for first, second in explicit
            ]
        rngs = spawn_rngs(self.seed, int(self.param("pairs", 20)))
        return [(random_density(rng), random_density(rng)) for rng in rngs]

    def run(self) -> ExperimentResult:
        params = self.cd_params()
        t_grid = self.param("t_grid", [0.25, 0.5, 0.75])
        n_prime = self.param("n_prime", [params.N])
        rows = []
        reports = []
        for index, (nu0, nu1) in enumerate(self.densities()):
            report = cd_star_check(nu0, nu1, params, t_grid, n_prime)
            reports.append(report)
            rows.extend(
                [index, row["n_prime"], row["t"], row["lhs"], row["rhs"], row["margin"]] for row in report.rows
            )
        passed = all(report.passed(self.tol) for report in reports)
        min_margin = min((report.min_margin for report in reports), default=math.inf)
        return ExperimentResult(
            {"K": params.K, "N": params.N, "pairs": len(reports), "min_margin": min_margin, "tol": self.tol},
            passed,
            {"cd1d": (["pair", "n_prime", "t", "lhs", "rhs", "margin"], rows)},
        )


QUADRATURE_ENTRIES: list[Entry] = [
    CountEntry("params.radial", "must be a nonnegative integer", optional=True),
    CountEntry("params.angular", "must be a nonnegative integer", optional=True),
    CountEntry("params.directions", "must be a nonnegative integer", optional=True),
    MappingEntry("params.nu", "must be a measure descriptor", optional=True),
]


class EnergyExperiment(Experiment):
    """ε-ladder of the averaged energy of a model disk map and the 2π·Lip² bound."""

    _command = "energy"
    _sampling = False
    _default_space = {"kind": "model_plane", "kappa": 0.0}
    _entries = QUADRATURE_ENTRIES + [
        OneOfEntry("params.map", "must be one of radial, constant", optional=True, options=["radial", "constant"]),
        PositiveNumberEntry("params.scale", "must be a positive number", optional=True),
        NumberListEntry("params.eps", "must be a list of positive scales", optional=True, positive=True),
    ]
    _tol = 1e-3

    def disk_map(self) -> DiskMap:
        """Returns the configured map: s ↦ scale·s along the rays (the identity of the flat
        disk when scale = 1) or the constant map at the apex.

        Returns:
            DiskMap: The map."""
        space = self.space
        if self.param("map", "radial") == "constant":
            return DiskMap.constant(space, space.apex)
        scale = float(self.param("scale", 1.0))
        turn = space.theta_total / (2.0 * math.pi)
        return DiskMap.from_function(space, lambda s, psi: space.point(scale * s, turn * psi))

    def run(self) -> ExperimentResult:
        u = self.disk_map()
        nu = LambdaMeasure.from_dict(self.param("nu", {"kind": "uniform", "a": 1.0, "b": 2.0}))
        lipschitz = u.lipschitz()
        ladder = energy_ladder(u, self.param("eps", [0.05, 0.02, 0.01]), nu)
        reports = [EnergyReport(energy, lipschitz, 2.0 * math.pi * lipschitz**2, self.tol) for _, energy in ladder]
        return ExperimentResult(
            {"nu": nu.to_dict(), "lipschitz": lipschitz, "ladder": [r.to_dict() for r in reports]},
            all(r.passed for r in reports),
            {"energy": (["eps", "energy"], [list(row) for row in ladder])},
        )


class FillExperiment(Experiment):
    """Filling of a metric circle around p by the flow homotopy, with its energy bound."""

    _command = "fill"
    _sampling = False
    _entries = FLOW_ENTRIES + QUADRATURE_ENTRIES + [
        PositiveNumberEntry("params.loop_radius", "must be a positive number", optional=True),
        CountEntry("params.loop_samples", "must be a nonnegative integer", optional=True),
        CountEntry("params.n_r", "must be a nonnegative integer", optional=True),
        IntervalEntry("params.energy_eps", "must lie in (0, 1/2)", 0.0, 0.5, optional=True),
    ]
    _tol = 1e-3

    def run(self) -> ExperimentResult:
        params = self.flow_params()
        p = self.point()
        radius = float(self.param("loop_radius", 0.5 * params.delta0 * params.R))
        loop = LoopMap.circle(self.space, p, radius, int(self.param("loop_samples", 32)))
        fill = fill_loop(loop, p, params, int(self.param("n_r", 16)))
        nu = LambdaMeasure.from_dict(self.param("nu", {"kind": "uniform", "a": 1.0, "b": 2.0}))
        energy = energy_certificate(
            fill.disk_map,
            float(self.param("energy_eps", 0.05)),
            nu,
            lipschitz=fill.lipschitz,
            tol=self.tol,
            radial=int(self.param("radial", 8)),
            angular=int(self.param("angular", 16)),
            directions=int(self.param("directions", 16)),
        )
        nodes = [
            [i, j, value.r, value.phi]
            for i in range(fill.disk_map.n_r + 1)
            for j, value in enumerate(fill.disk_map.node(i, k) for k in range(fill.disk_map.n_phi))
        ]
        return ExperimentResult(
            {"loop": loop.to_dict(), "fill": fill.to_dict(), "energy": energy.to_dict()},
            fill.passed and energy.passed,
            {"fill": (["ring", "angle", "r", "phi"], nodes)},
        )


class BoundExperiment(Experiment):
    """Simplicial-volume bound n!·C_{K,N}(R, ε)ⁿ·𝓗ⁿ along an (R, ε) ladder."""

    _command = "bound"
    _sampling = False
    _needs_space = False
    _entries = CD_ENTRIES + [
        CountEntry("params.n", "must be a nonnegative integer", optional=True),
        PositiveNumberEntry("params.hausdorff_n", "must be a positive number", optional=True),
        NumberListEntry("params.R_ladder", "must be a list of positive radii", optional=True, positive=True),
        NumberListEntry("params.eps_ladder", "must be a list of positive widths", optional=True, positive=True),
    ]
    _tol = 1e-3

    def run(self) -> ExperimentResult:
        table = simplicial_volume_pipeline(
            self.cd_params(),
            int(self.param("n", 2)),
            float(self.param("hausdorff_n", 1.0)),
            self.param("R_ladder", [5.0, 10.0, 20.0, 40.0]),
            self.param("eps_ladder", [1e-2, 1e-3, 1e-4, 1e-6]),
            self.tol,
        )
        return ExperimentResult(table.to_dict(), table.passed, {"bound": (["R", "eps", "C", "bound"], table.to_csv_rows())})


class ExperimentGroup:
    """This is a base class for grouping experiments. Each group should have an
    _experiments attribute with a list of experiment classes.

    Examples:
        ```python
        from alexandrov_flow.cli.experiment import ExperimentGroup

        experiment = ExperimentGroup.experiment("bound", {"params": {"K": -1.0, "N": 2.0}})
        result = experiment.run()
        ```
    """

    _experiments: list[Type[Experiment]] | None = [
        SllcExperiment,
        ContractionExperiment,
        ConcavityExperiment,
        CurvatureExperiment,
        BgExperiment,
        Cd1dExperiment,
        EnergyExperiment,
        FillExperiment,
        BoundExperiment,
    ]

    # pylint: disable=W0212, E1133
    @classmethod
    def commands(cls) -> list[str]:
        """Returns the commands of the experiments in the group.

        Returns:
            list[str]: Commands."""
        if cls._experiments is None:
            raise ValueError("No experiments found in the group.")
        return [experiment._command for experiment in cls._experiments if experiment._command]

    # pylint: disable=W0212, E1133
    @classmethod
    def find(cls, command: str) -> Type[Experiment] | None:
        """Finds an experiment class in the group by its command.

        Args:
            command (str): Command.

        Returns:
            Type[Experiment] | None: Experiment class or None."""
        if cls._experiments is None:
            raise ValueError("No experiments found in the group.")
        for experiment in cls._experiments:
            if experiment._command == command:
                return experiment
        return None

    @classmethod
    def experiment(cls, command: str, config: dict[str, Any]) -> Experiment | None:
        """Creates the experiment of the group with the given command.

        Args:
            command (str): Command.
            config (dict[str, Any]): Validated configuration.

        Returns:
            Experiment | None: Experiment or None."""
        experiment = cls.find(command)
        return experiment(config) if experiment is not None else None
