"""Pairing engine over a 160-bit Barreto-Naehrig curve (80-bit security).

Exposes the two source groups G1 (points over the base field) and G2 (points
on the sextic twist over Fp2), the target group GT inside Fp12, the optimal
ate pairing, and a product-of-pairings evaluator that shares the Miller-loop
squarings and the final exponentiation across terms.

G2 arguments can be prepared once (their Miller-loop line coefficients
cached) and reused across verifications, which is the standard trick for
fixed public keys and system generators.
"""

from .curve import (  # noqa: F401
    CURVE_ORDER,
    FIELD_PRIME,
    g1_generator,
    g2_generator,
    G1Point,
    G2Point,
    hash_to_g1,
)
from .ate import (  # noqa: F401
    PreparedG2,
    final_exponentiation,
    gt_generator,
    pairing,
    pairing_call_count,
    pairing_product,
    prepare_g2,
)
from .fields import gt_exp, gt_mul, gt_inv, gt_serialize, gt_deserialize, GT_ONE  # noqa: F401
