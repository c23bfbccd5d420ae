from ginlab.version import __version__
