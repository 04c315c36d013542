"""Golden text output of ``table --max 4`` (shifted convention).

The (2,2) row's sub-leading signs are pinned down independently by the
alpha = -1 specialization: its t^2 coefficient is 240^2 * <tau_2^3>_2 =
+1680, a manifestly positive pure psi integral.
"""

GOLDEN_TABLE_LINES = [
    "P_{()} = 1",
    "P_{(1)} = t + 12",
    "P_{(2)} = t^2 - 10*alpha*t + 240",
    "P_{(1,1)} = t^2 - 12*t",
    "P_{(3)} = t^3 + (-77/3*alpha - 28)*t^2 + 280*t + 6720",
    "P_{(2,1)} = t^3 + (-10*alpha - 48)*t^2 + (240*alpha + 240)*t",
    "P_{(1,1,1)} = t^3 - 72*t^2 + 432*t",
    "P_{(4)} = t^4 + (-43*alpha - 72)*t^3 + (126*alpha^2 + 756*alpha + 840)*t^2"
    " + 10080*t + 241920",
    "P_{(3,1)} = t^4 + (-77/3*alpha - 100)*t^3 + (1232*alpha + 1624)*t^2",
    "P_{(2,2)} = t^4 + (-20*alpha - 100)*t^3 + (100*alpha^2 + 1360*alpha + 1680)*t^2",
    "P_{(2,1,1)} = t^4 + (-10*alpha - 132)*t^3 + (840*alpha + 3120)*t^2"
    " + (-8640*alpha - 8640)*t",
    "P_{(1,1,1,1)} = t^4 - 168*t^3 + 5616*t^2 - 20736*t",
]
