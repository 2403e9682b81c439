from Errors import SpecError
from Lattice_type.Types import Boundary, ExtrapolationForm


class SpaceSpec:
    def __init__(self, dimension: int = 1, extent: int = 100, degree: int = 1, boundary: str = Boundary.PERIODIC,
                 potential: float = 0.0, hopping: float = 1.0) -> None:
        self.dimension = dimension
        self.extent = extent
        self.degree = degree
        self.boundary = boundary
        # on-site attraction g, in units of the hopping t
        self.potential = potential
        self.hopping = hopping

    def validate(self) -> "SpaceSpec":
        if self.dimension not in (1, 2, 3):
            raise SpecError(f"dimension must be 1, 2 or 3, got {self.dimension}")
        if int(self.extent) != self.extent or self.extent < 3:
            raise SpecError(f"extent must be an integer >= 3, got {self.extent}")
        if int(self.degree) != self.degree or self.degree < 1:
            raise SpecError(f"degree must be an integer >= 1, got {self.degree}")
        if self.boundary not in Boundary.values():
            raise SpecError(f"boundary must be one of {Boundary.values()}, got {self.boundary!r}")
        if not self.potential >= 0:
            raise SpecError(f"potential must be >= 0, got {self.potential}")
        if self.potential > 0 and self.degree >= 2:
            raise SpecError(f"a singular space (degree {self.degree}) carries no potential, got g={self.potential}")
        if not self.hopping > 0:
            raise SpecError(f"hopping must be > 0, got {self.hopping}")
        return self

    def site_count(self) -> int:
        return self.degree * self.extent ** self.dimension - self.degree + 1

    def with_changes(self, **changes) -> "SpaceSpec":
        params = self.as_dict()
        params.update(changes)
        return SpaceSpec(**params)

    def as_dict(self) -> dict:
        return {"dimension": self.dimension, "extent": self.extent, "degree": self.degree,
                "boundary": self.boundary, "potential": float(self.potential), "hopping": float(self.hopping)}

    def __eq__(self, other) -> bool:
        return isinstance(other, SpaceSpec) and self.as_dict() == other.as_dict()

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.as_dict().items())))

    def __repr__(self) -> str:
        return (f"SpaceSpec(D={self.dimension}, L={self.extent}, M={self.degree}, "
                f"{self.boundary}, g={self.potential}, t={self.hopping})")


class Eigen_ops:
    def __init__(self, k: int = 1, tol: float | None = None, max_iterations: int = 5000, seed: int = 1234,
                 basis_cap: int = 64, reduce_sheets: bool = False) -> None:
        # tol None means 1e-10 * ||H||_1, resolved by the solver
        self.k = k
        self.tol = tol
        self.max_iterations = max_iterations
        self.seed = seed
        self.basis_cap = basis_cap
        self.reduce_sheets = reduce_sheets

    def validate(self, size: int) -> "Eigen_ops":
        if self.k < 1 or self.k >= size:
            raise SpecError(f"k must satisfy 1 <= k < N={size}, got {self.k}")
        if self.tol is not None and not self.tol > 0:
            raise SpecError(f"tol must be > 0, got {self.tol}")
        if self.max_iterations < 1:
            raise SpecError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.basis_cap < self.k + 2:
            raise SpecError(f"basis_cap must be >= k + 2, got {self.basis_cap}")
        if self.reduce_sheets and self.k != 1:
            raise SpecError("reduce_sheets keeps only the sheet-symmetric sector and requires k = 1")
        return self

    def as_dict(self) -> dict:
        return {"k": self.k, "tol": self.tol, "max_iterations": self.max_iterations, "seed": self.seed,
                "basis_cap": self.basis_cap, "reduce_sheets": self.reduce_sheets}


class Fit_ops:
    def __init__(self, max_iterations: int = 200, window_min: float = 1.0, window_max: float | None = None,
                 b_init: float = 0.1, max_relative_rmse: float = 0.05, ftol: float = 1e-12,
                 xtol: float = 1e-10) -> None:
        self.max_iterations = max_iterations
        self.window_min = window_min
        # None means L/4
        self.window_max = window_max
        self.b_init = b_init
        self.max_relative_rmse = max_relative_rmse
        self.ftol = ftol
        self.xtol = xtol


class Bound_ops:
    def __init__(self, eps_energy: float = 1e-3, eps_radius: float = 0.02, form: str | None = None,
                 energy_form: str = ExtrapolationForm.INVERSE_SQUARE,
                 radius_form: str = ExtrapolationForm.LINEAR) -> None:
        self.eps_energy = eps_energy
        self.eps_radius = eps_radius
        # a single form, when given, applies to both observables
        self.energy_form = form or energy_form
        self.radius_form = form or radius_form
        for name in (self.energy_form, self.radius_form):
            if name not in ExtrapolationForm.values():
                raise SpecError(f"unknown extrapolation form {name!r}")

    def as_dict(self) -> dict:
        return {"eps_energy": self.eps_energy, "eps_radius": self.eps_radius, "energy_form": self.energy_form,
                "radius_form": self.radius_form}


class Run_ops:
    def __init__(self, output: str = "", cache_dir: str = "", threads: int | None = None,
                 config: str = "") -> None:
        self.output = output
        self.cache_dir = cache_dir
        self.threads = threads
        self.config = config
