from .init import admissible, perturb_init
from .nesterov import NesterovSolver, default_sigma, nesterov_solve
from .objective import flat_theta, gradient, hessian, objective, residual

__all__ = [
    "NesterovSolver",
    "admissible",
    "default_sigma",
    "flat_theta",
    "gradient",
    "hessian",
    "nesterov_solve",
    "objective",
    "perturb_init",
    "residual",
]
