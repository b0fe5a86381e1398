"""Published reference values for the three-magnet, 20 kg-cm gripper.

Used by ``gripperopt reproduce`` and the acceptance tests.
"""

# (w1, w2, r2 [m], r4a [m], dual value V)
TABLE1 = (
    (0.1, 0.9, 0.0655802278, 0.2623209111, 0.1032183906),
    (0.2, 0.8, 0.07077726, 0.2831090401, 0.1202260929),
    (0.3, 0.7, 0.0724288584, 0.2897154336, 0.1259025487),
    (0.4, 0.6, 0.0721803804, 0.2887215215, 0.1250401754),
    (0.5, 0.5, 0.0704980471, 0.2819921883, 0.1192793914),
    (0.6, 0.4, 0.0674637726, 0.2698550902, 0.1092326546),
    (0.7, 0.3, 0.0628900842, 0.2515603366, 0.0949239044),
    (0.8, 0.2, 0.0561759485, 0.224703794, 0.0757376926),
    (0.9, 0.1, 0.0454707903, 0.1818831612, 0.0496222265),
)

# Dimensions in cm, in the row order of sizing.TABLE2_ROWS.
TABLE2_CM = (2.5, 5.0, 18.0, 3.0, 2.5, 2.5, 2.5, 10.0, 13.0, 23.0)

THEORETICAL_PULL_KG = 4.66
THEORETICAL_PULL_TOL = 0.01
MEASURED_PULL_KG = 2.1
ARRAY_CAPACITY_KG = 6.0  # "approximately"
RELEASE_FORCE_N = 75.0  # "about"
RELEASE_FORCE_TOL = 1.5
SERVO_RATING_KGCM = 20.0

TABLE1_TOL = 1e-6
