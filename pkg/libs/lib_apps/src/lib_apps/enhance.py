"""Detail enhancement by boosting the detail layer."""

from typing import Optional

import numpy as np

from lib_common import logger
from lib_imagebuf import Image
from lib_sgwls import SmoothConfig, smooth

from lib_apps.presets import DETAIL_BOOST, get_preset


def detail_enhance(
    img: Image,
    boost: float = DETAIL_BOOST,
    cfg: Optional[SmoothConfig] = None,
    threads: int = 1,
) -> Image:
    """Amplify the detail layer of an LDR image.

    The image guides its own base layer; the result is
    clamp(base + boost * (img - base)) in [0, 1].
    """
    cfg = cfg or get_preset("enhance")
    logger.info(f"Detail enhancement, boost={boost}, config={cfg.model_dump_json()}")
    base = smooth(img, img, cfg, threads)
    detail = img.data - base.data
    return Image(np.clip(base.data + boost * detail, 0.0, 1.0))
