from Options.Ops import SpaceSpec, Eigen_ops, Fit_ops, Bound_ops, Run_ops
from Options.configure import load_config
