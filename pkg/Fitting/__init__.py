from Fitting.fit_main import FitResult, fit_inverse_poly, fit_nonlinear, radial_fit, cooper_fit
