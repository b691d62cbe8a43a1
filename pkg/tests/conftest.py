import numpy as np
import pytest

from oregonator import Domain, NondimParams, sigma_root


@pytest.fixture(scope="session")
def p_ref():
    """Worked-example kinetics point (stirred; diffusivities unused)."""
    return NondimParams(mu1=1.0, mu2=1.0, mu3=1.0,
                        alpha=77.27, beta=8.375e-6, gamma=1.0, delta=70.0)


@pytest.fixture(scope="session")
def sig_ref(p_ref):
    return sigma_root(p_ref)


@pytest.fixture(scope="session")
def p_tame():
    """Moderate-rate Hopf point with a wide normal-form range."""
    return NondimParams(mu1=1.0, mu2=1.0, mu3=1.0,
                        alpha=2.0, beta=0.02, gamma=1.0, delta=0.8)


@pytest.fixture(scope="session")
def p_steady():
    """Moderate-rate point whose first crossing is the spatial steady one
    (mu3/mu1 = 8, interval of length pi, maximizing mode k0 = 3)."""
    return NondimParams(mu1=0.12, mu2=0.12, mu3=0.96,
                        alpha=2.0, beta=0.02, gamma=1.0, delta=0.9)


@pytest.fixture(scope="session")
def dom_pi():
    return Domain("interval", (np.pi,), mode_cap=40)


@pytest.fixture(scope="session")
def p_ref_spatial():
    """Worked-example rates with the diffusivity family mu1 = mu2,
    mu3 = 2 mu1 pinned so the maximizing mode sits at mu1 rho = 3.5."""
    return NondimParams(mu1=0.875, mu2=0.875, mu3=1.75,
                        alpha=77.27, beta=8.375e-6, gamma=1.0, delta=80.0)
