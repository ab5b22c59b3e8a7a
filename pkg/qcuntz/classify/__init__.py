from qcuntz.classify.orbits import (
    default_x0,
    delta_set,
    fundamental_domain,
    normalize_x,
    orbit_value,
    same_orbit,
)
