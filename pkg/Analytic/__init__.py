from Analytic.one_d import (Analytic1DState, singularity_state_1d, potential_state_1d, equivalence_relation,
                            equivalent_potential_1d, junction_kinetic_fraction, potential_energy_fraction)
