"""
SVG figures for `curvelab run --plots`. matplotlib is an optional extra
and is imported only when a Plotter is created.
"""
import os

import numpy as np

from curvelab.common.log import getlogger

logger = getlogger()

SVG = ".svg"


class Plotter:
    def __init__(self, outDir: str):
        import matplotlib
        matplotlib.use("Agg")
        from matplotlib import pyplot
        self.plt = pyplot
        # fixed metadata keeps repeated runs byte-identical
        self.plt.rcParams["svg.hashsalt"] = "curvelab"
        self.outDir = outDir

    def _save(self, fig, name: str) -> str:
        path = os.path.join(self.outDir, name + SVG)
        fig.savefig(path, format="svg", bbox_inches="tight",
                    metadata={"Date": None})
        self.plt.close(fig)
        logger.debug("wrote {}".format(path))
        return path

    def growthReport(self, report, name: str) -> str:
        """q on log-log axes beside the two convexity residuals."""
        fig, (left, right) = self.plt.subplots(1, 2, figsize=(10, 4))
        left.loglog(report.radii, report.q, label="q")
        left.set_xlabel("r")
        left.set_ylabel("q(r)")
        right.semilogx(report.radii, report.residualI, label="residual i")
        right.semilogx(report.radii, report.residualII, label="residual ii")
        right.axhline(0.0, color="black", linewidth=0.5)
        right.set_xlabel("r")
        right.legend()
        return self._save(fig, name)

    def scalingFit(self, fit, name: str) -> str:
        """log length against log sqrt(lambda) with the fitted line."""
        x = np.array([0.5 * np.log(t.lam) for t in fit.traces])
        y = np.array([np.log(t.length) for t in fit.traces])
        fig, ax = self.plt.subplots(figsize=(5, 4))
        ax.plot(x, y, "o", label="traced")
        ax.plot(x, fit.intercept + fit.slope * x,
                label="slope {:.3f}".format(fit.slope))
        ax.set_xlabel("log sqrt(lambda)")
        ax.set_ylabel("log length")
        ax.legend()
        return self._save(fig, name)

    def nodalSet(self, trace, name: str) -> str:
        """Segments in an equirectangular projection."""
        fig, ax = self.plt.subplots(figsize=(8, 4))
        for (lon0, lat0), (lon1, lat1) in trace.lonLat():
            if abs(lon1 - lon0) > 180:
                continue
            ax.plot([lon0, lon1], [lat0, lat1], color="black",
                    linewidth=0.6)
        ax.set_xlim(-180, 180)
        ax.set_ylim(-90, 90)
        ax.set_xlabel("longitude")
        ax.set_ylabel("latitude")
        ax.set_title(trace.eigenfunction.label)
        return self._save(fig, name)
