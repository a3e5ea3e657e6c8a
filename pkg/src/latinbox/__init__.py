from latinbox import utils, arrays, matching, enumeration, packing, finders

# the experiment driver needs matplotlib and python-dotenv on top of the core stack
try:
    from latinbox import labcli
except ImportError:
    labcli = None
