from Eigen.lanczos import EigenResult, lowest_eigenpairs, dense_spectrum, sign_normalize, DENSE_LIMIT
from Eigen.wavefunction_io import (write_vector, read_vector, vector_bytes, vector_from_bytes, write_wavefunction_csv,
                                   wavefunction_csv_bytes)
