import logging
import numpy as np
from scipy import special
from services.errors import QuadratureError

logger = logging.getLogger(__name__)

PANEL_ORDER = 20
MAX_REFINEMENTS = 7


class Quadrature:
    """Class holds the quadrature rules and the finite difference stencil used by
    the orthogonality checks and the matrix element oracles.
    """

    def __init__(self, panel_order=PANEL_ORDER):
        self.panel_order = panel_order
        self.legendre_nodes, self.legendre_weights = np.polynomial.legendre.leggauss(panel_order)

    def panel_rule(self, lower, upper, panels):
        """Method returns composite Gauss-Legendre nodes and weights on [lower, upper]
        split into equal panels.

        Args:
            lower (float): Left end.
            upper (float): Right end.
            panels (int): Number of panels.

        Returns:
            tuple: (nodes, weights) arrays.
        """

        edges = np.linspace(lower, upper, panels + 1)
        half_widths = 0.5 * np.diff(edges)
        centres = 0.5 * (edges[:-1] + edges[1:])
        nodes = centres[:, None] + half_widths[:, None] * self.legendre_nodes[None, :]
        weights = half_widths[:, None] * self.legendre_weights[None, :]
        return nodes.ravel(), weights.ravel()

    def integrate(self, integrand, lower, upper, panels=4, tolerance=1e-10):
        """Method integrates a vectorised function by doubling the panel count until
        two successive estimates agree.

        Args:
            integrand (callable): Maps an array of nodes to an array whose last
            axis runs over the nodes.
            lower (float): Left end.
            upper (float): Right end.
            panels (int, optional): Initial panel count. Defaults to 4.
            tolerance (float, optional): Absolute agreement required. Defaults to 1e-10.

        Raises:
            QuadratureError: No agreement after MAX_REFINEMENTS doublings.

        Returns:
            float or np.ndarray: The integral(s).
        """

        previous = None
        difference = np.inf
        for _ in range(MAX_REFINEMENTS):
            nodes, weights = self.panel_rule(lower, upper, panels)
            estimate = np.asarray(integrand(nodes)) @ weights
            if previous is not None:
                difference = float(np.max(np.abs(estimate - previous)))
                logger.debug("quadrature with %d panels changed by %.3e", panels, difference)
                if difference <= tolerance:
                    return estimate
            previous = estimate
            panels *= 2
        raise QuadratureError("quadrature failed", difference, tolerance)

    def gauss_jacobi_rule(self, points, alpha, beta):
        """Method returns the Gauss rule for the weight (1-y)^alpha (1+y)^beta on [-1, 1].
        """

        return special.roots_jacobi(points, alpha, beta)

    def gauss_laguerre_rule(self, points, beta):
        """Method returns the Gauss rule for the weight y^beta e^-y on [0, inf).
        """

        return special.roots_genlaguerre(points, beta)

    def second_derivative(self, function, x, step):
        """Method differentiates twice with the fourth order central stencil and
        one Richardson step between h and h/2.

        Args:
            function (callable): Vectorised function of x.
            x (np.ndarray): Points.
            step (np.ndarray or float): Step h at each point.

        Returns:
            np.ndarray: f''(x).
        """

        def stencil(h):
            return (-function(x + 2 * h) + 16 * function(x + h) - 30 * function(x)
                    + 16 * function(x - h) - function(x - 2 * h)) / (12 * h * h)

        coarse = stencil(step)
        fine = stencil(0.5 * step)
        return fine + (fine - coarse) / 15.0


quadrature = Quadrature()
