from latinbox.arrays.Array3D import Array3D, DimensionError, FormatError
from latinbox.arrays.ColoredArray import ColoredArray
from latinbox.arrays.PartialLatinBox import PartialLatinBox
from latinbox.arrays.ArrayProcess import ArrayProcess
from latinbox.arrays.models import sample_binomial, sample_process, sample_green_blue
from latinbox.arrays.shafts import empty_shafts, degree_maps, shaft_degrees, validate_latin_box, is_latin_box
