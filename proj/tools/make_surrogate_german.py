#!/usr/bin/env python3
"""Generates data/german_surrogate.data: a synthetic stand-in for the UCI
German credit file with the same schema (1000 rows, 21 whitespace-separated
fields, codebook categories, 700 good / 300 bad labels) and a learnable
relationship between features and label. It is NOT the real data set;
point the CLI's --data flag at the genuine german.data when you have it.
"""
import numpy as np

rng = np.random.default_rng(20240817)
N = 1000


def cat(codes, probs):
    return rng.choice(codes, size=N, p=probs)


checking = cat(["A11", "A12", "A13", "A14"], [0.27, 0.27, 0.06, 0.40])
duration = np.clip(np.rint(np.exp(rng.normal(2.95, 0.55, N))), 4, 72).astype(int)
history = cat(["A30", "A31", "A32", "A33", "A34"], [0.04, 0.05, 0.53, 0.09, 0.29])
purpose = cat(
    ["A40", "A41", "A42", "A43", "A44", "A45", "A46", "A48", "A49", "A410"],
    [0.234, 0.103, 0.181, 0.280, 0.012, 0.022, 0.050, 0.009, 0.097, 0.012],
)
amount = np.clip(np.rint(np.exp(rng.normal(7.8, 0.8, N))), 250, 18424).astype(int)
savings = cat(["A61", "A62", "A63", "A64", "A65"], [0.60, 0.10, 0.06, 0.05, 0.19])
employment = cat(["A71", "A72", "A73", "A74", "A75"], [0.06, 0.17, 0.34, 0.17, 0.26])
rate = cat(["1", "2", "3", "4"], [0.14, 0.23, 0.16, 0.47])
personal = cat(["A91", "A92", "A93", "A94"], [0.05, 0.31, 0.55, 0.09])
debtors = cat(["A101", "A102", "A103"], [0.91, 0.04, 0.05])
residence = cat(["1", "2", "3", "4"], [0.13, 0.31, 0.15, 0.41])
prop = cat(["A121", "A122", "A123", "A124"], [0.28, 0.23, 0.33, 0.16])
age = np.clip(np.rint(np.exp(rng.normal(3.52, 0.28, N))), 19, 75).astype(int)
plans = cat(["A141", "A142", "A143"], [0.14, 0.05, 0.81])
housing = cat(["A151", "A152", "A153"], [0.18, 0.71, 0.11])
credits = cat(["1", "2", "3", "4"], [0.63, 0.33, 0.03, 0.01])
job = cat(["A171", "A172", "A173", "A174"], [0.02, 0.20, 0.63, 0.15])
liable = cat(["1", "2"], [0.85, 0.15])
phone = cat(["A191", "A192"], [0.60, 0.40])
foreign = cat(["A201", "A202"], [0.96, 0.04])

# Latent creditworthiness: driven by fields the downstream linear model
# actually sees, so the learned scores carry real signal.
score = np.array(
    [{"A11": -1.0, "A12": -0.3, "A13": 0.4, "A14": 1.1}[c] for c in checking]
)
score = score + np.array(
    [{"A61": -0.4, "A62": -0.1, "A63": 0.2, "A64": 0.5, "A65": 0.3}[c] for c in savings]
)
score = score + np.array(
    [{"A30": -0.8, "A31": -0.6, "A32": 0.1, "A33": -0.2, "A34": 0.6}[c] for c in history]
)
score = score - 0.35 * (duration - duration.mean()) / duration.std()
score = score - 0.25 * (np.log(amount) - np.log(amount).mean()) / np.log(amount).std()
score = score + 0.15 * (age - age.mean()) / age.std()
# noise keeps the label only weakly learnable (~72% training accuracy for
# a linear model), matching the difficulty of the real data set
score = score + rng.normal(0.0, 4.0, N)

# exactly 700 good / 300 bad
order = np.argsort(-score, kind="stable")
label = np.full(N, "2", dtype=object)
label[order[:700]] = "1"

cols = [
    checking, duration.astype(str), history, purpose, amount.astype(str),
    savings, employment, rate, personal, debtors, residence, prop,
    age.astype(str), plans, housing, credits, job, liable, phone, foreign,
    label,
]
with open("data/german_surrogate.data", "w") as f:
    for i in range(N):
        f.write(" ".join(str(c[i]) for c in cols) + "\n")
print("wrote data/german_surrogate.data")
