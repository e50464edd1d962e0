"""Independent capacity oracles used to freeze expected values in test_capacity.py.

Run as a script to regenerate them: scipy 1-D quadrature of two BPSK channels
for QPSK, and a dense 2-D Riemann sum of the mutual information for streams.
"""
import numpy as np, math
from scipy.integrate import quad
from hiermod.constellation import make_nonuniform_16qam, make_qpsk, partition_indices, StreamSpec

def bpsk_bits(snr_db):
    # QPSK = two BPSK channels, each with amplitude 1/sqrt2 and noise variance N0/2
    n0 = 10**(-snr_db/10); a = 1/math.sqrt(2); s2 = n0/2
    def f(y):
        p1 = math.exp(-(y-a)**2/(2*s2)); p0 = math.exp(-(y+a)**2/(2*s2))
        # expectation given x=+a of log2(2 p1/(p0+p1))
        return p1/math.sqrt(2*math.pi*s2) * (1 - math.log2(1 + math.exp(-2*a*y/s2)) if -2*a*y/s2 < 700 else 0)
    return quad(f, -40, 40, limit=400, epsabs=1e-13)[0]

def riemann_stream(c, s, snr_db, half=None, h=None):
    n0 = 10**(-snr_db/10)
    half = half or (1.6 + 9*math.sqrt(n0/2)); h = h or min(0.01, math.sqrt(n0)/60)
    g = np.arange(-half, half+h/2, h)
    Y = np.stack(np.meshgrid(g, g, indexing='ij'), -1).reshape(-1, 2)
    dens = np.exp(-np.sum((Y[:, None, :]-c.points[None])**2, 2)/n0)/(math.pi*n0)  # (Ny, M)
    part = partition_indices(c, s) if s else np.arange(c.size)[:, None]
    cond = np.stack([dens[:, row].mean(1) for row in part], 1)   # p(y|i)
    py = cond.mean(1)
    with np.errstate(divide='ignore', invalid='ignore'):
        t = np.where(cond > 0, cond*np.log2(cond/py[:, None]), 0.0)
    return t.sum()/len(part) * h*h

if __name__ == "__main__":
    for db in (-3.4, 0.0, 6.0):
        print("qpsk", db, repr(2*bpsk_bits(db)))
    h = make_nonuniform_16qam(2)
    for s, db in ((StreamSpec((1,2)), -2.7), (StreamSpec((3,4)), 6.2), (None, 3.0)):
        print(s, db, repr(riemann_stream(h, s, db)))


def qpsk_threshold(target):
    """Es/N0 [dB] where normalized QPSK capacity equals ``target`` (scipy brentq)."""
    from scipy.optimize import brentq

    return brentq(lambda d: bpsk_bits(d) - target, -20, 12, xtol=1e-10)
