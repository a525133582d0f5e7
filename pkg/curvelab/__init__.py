from curvelab.__metadata__ import __version__
