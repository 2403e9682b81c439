class Boundary:
    PERIODIC = "periodic"
    OPEN = "open"

    @classmethod
    def values(cls) -> tuple[str, ...]:
        return cls.PERIODIC, cls.OPEN


class BoundClass:
    BOUND = "Bound"
    DELOCALIZED = "Delocalized"
    INDETERMINATE = "Indeterminate"


class Observable:
    BINDING_ENERGY = "binding_energy"
    R_AVG_OVER_L = "r_avg_over_L"


class BesselOrder:
    ZERO = "zero"
    HALF = "half"

    @classmethod
    def values(cls) -> tuple[str, ...]:
        return cls.ZERO, cls.HALF


class ModelName:
    BESSEL2D = "bessel2d"
    BESSEL3D = "bessel3d"
    COOPER = "cooper"
    INVERSE_POLY_L = "inverse_poly_L"
    INVERSE_POLY_L2 = "inverse_poly_L2"


class ExtrapolationForm:
    # y = a + b/L + c/L^2
    QUADRATIC = "quadratic"
    # y = a + b/L^2
    INVERSE_SQUARE = "inverse-square"
    # y = a + b/L
    LINEAR = "linear"

    @classmethod
    def values(cls) -> tuple[str, ...]:
        return cls.QUADRATIC, cls.INVERSE_SQUARE, cls.LINEAR

    @classmethod
    def powers(cls, form: str) -> tuple[int, ...]:
        if form == cls.QUADRATIC:
            return 0, 1, 2
        if form == cls.INVERSE_SQUARE:
            return 0, 2
        if form == cls.LINEAR:
            return 0, 1
        raise ValueError(f"Unknown extrapolation form: {form}")
