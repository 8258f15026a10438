import numpy as np
import pandas as pd

DEFAULT_IM_RANGE = (0.25, 5.0)


def _random_taus(rng: np.random.Generator, n: int, im_range) -> tuple:
    tau_re = rng.uniform(-0.5, 0.5, size=n)
    tau_im = rng.uniform(im_range[0], im_range[1], size=n)
    return tau_re, tau_im


def random_tau_samples(n: int = 100, seed: int = 42, im_range=DEFAULT_IM_RANGE) -> pd.DataFrame:
    rng = np.random.default_rng(seed)
    tau_re, tau_im = _random_taus(rng, n, im_range)
    return pd.DataFrame({"tau_re": tau_re, "tau_im": tau_im})


def random_theta_samples(n: int = 200, seed: int = 42, im_range=DEFAULT_IM_RANGE) -> pd.DataFrame:
    """Pares (z, tau) com z = a + b tau na célula fundamental."""
    rng = np.random.default_rng(seed)
    tau_re, tau_im = _random_taus(rng, n, im_range)

    # Coordenadas na base {1, tau}
    a = rng.random(n)
    b = rng.random(n)

    return pd.DataFrame({
        "tau_re": tau_re,
        "tau_im": tau_im,
        "a": a,
        "b": b,
        "z_re": a + b * tau_re,
        "z_im": b * tau_im,
    })


def random_pair_samples(n: int = 100, seed: int = 42, im_range=DEFAULT_IM_RANGE) -> pd.DataFrame:
    """Pares de pontos (p, q) de X_tau, em coordenadas da base."""
    rng = np.random.default_rng(seed)
    tau_re, tau_im = _random_taus(rng, n, im_range)
    coords = rng.random((n, 4))

    df = pd.DataFrame({
        "tau_re": tau_re,
        "tau_im": tau_im,
        "p_a": coords[:, 0],
        "p_b": coords[:, 1],
        "q_a": coords[:, 2],
        "q_b": coords[:, 3],
    })
    df["p_re"] = df["p_a"] + df["p_b"] * df["tau_re"]
    df["p_im"] = df["p_b"] * df["tau_im"]
    df["q_re"] = df["q_a"] + df["q_b"] * df["tau_re"]
    df["q_im"] = df["q_b"] * df["tau_im"]
    return df
