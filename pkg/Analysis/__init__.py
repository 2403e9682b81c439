from Analysis.observables import (RadialProfile, binding_energy, radial_profile, average_radius, decay_constant_1d,
                                  count_bound_states, classify_point, classify_limits)
from Analysis.solve import GroundState, solve_ground_state, solve_spectrum
from Analysis.extrapolation import (ExtrapolationSeries, series_from_values, measure_family, extrapolate,
                                    extrapolate_pair, classify_bound, default_extents)
from Analysis.equivalence import (EquivalencePoint, CriticalBracket, decay_constant, find_equivalent_potential,
                                  equivalence_sweep, find_critical_potential_3d, collapse_deviation,
                                  scaling_exponent, profile_equivalence)
from Analysis.sweeps import SweepRow, SWEEP_COLUMNS, measure_point, sweep, sweep_degrees, sweep_potentials
