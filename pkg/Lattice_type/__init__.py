from Lattice_type.Types import Boundary, BoundClass, Observable, BesselOrder, ModelName, ExtrapolationForm
