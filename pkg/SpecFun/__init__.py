from SpecFun.bessel import bessel_k, k0, k_half
