"""The worked instances used across the suite."""
from redop import GenSet, from_matrix

G4 = GenSet(["g1", "g2", "g3", "g4"])

T1_M = [[1, 1, 0, 0], [0, 0, 0, 0], [0, 0, 1, 1], [0, 0, 0, 0]]
T2_M = [[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 0]]
MEET_M = [[1, 1, 1, 1], [0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]]
C1_M = [[1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1]]
C2_M = [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, 0, 0], [0, 0, 0, 1]]


def T1():
    return from_matrix(T1_M, G4)


def T2():
    return from_matrix(T2_M, G4)


def P():
    return [T1(), T2()]


BRAID_ALPHABET = "xyz"
BRAID_RULES = [("yz", "x"), ("zx", "xy")]
BRAID_NRED_PAIR = ["xyz", "xzx", "yxy", "yyz", "yzx", "yzy", "yzz", "zxx", "zxy", "zxz", "zyz", "zzx"]
