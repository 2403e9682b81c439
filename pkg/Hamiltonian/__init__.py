from Hamiltonian.hamiltonian import (SparseOperator, EnergyDecomposition, SectorOperator, assemble, apply,
                                     decompose_energy, symmetric_sector)
