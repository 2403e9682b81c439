from Fitting.Models_map.Models import Models, Radial
