"""Type aliases shared across pixelguard."""

from typing import Any

import numpy as np
import numpy.typing as npt

# Type aliases
type JSON = dict[str, Any]
type Diagnostics = dict[str, float | int | bool | str]
type FloatArray = npt.NDArray[np.float64]
type Witness = tuple[float, ...]
