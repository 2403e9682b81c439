from Abstracts.FitModel import FitModel
from Fitting.Models import Bessel2D, Bessel3D, Cooper

Models: dict[str, type[FitModel]] = {"bessel2d": Bessel2D, "bessel3d": Bessel3D, "cooper": Cooper}

# radial model by dimension
Radial: dict[int, type[FitModel]] = {2: Bessel2D, 3: Bessel3D}
