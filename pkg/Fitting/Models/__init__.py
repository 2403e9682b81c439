from Fitting.Models.Bessel2D import Bessel2D
from Fitting.Models.Bessel3D import Bessel3D
from Fitting.Models.Cooper import Cooper
