from latinbox.enumeration.Polynomial import Polynomial
from latinbox.enumeration.counting import SizeGuardError, iter_latin_boxes, count_latin_boxes, all_latin_squares, count_rectangles_exact
from latinbox.enumeration.containment import (NoFixedPointError, IterationReport, square_masks, q_small, two_square_lower_bound,
                                              sign_changes, fixed_point, fixed_point_report, iterate_block_probability)
from latinbox.enumeration.asymptotics import (SHAPES, PermanentBounds, rectangle_count_asymptotic, permanent_bounds, rectangle_rows,
                                              rectangle_count_bounds, no_empty_shaft_probability, threshold_scale)
