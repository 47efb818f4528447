"""From a corpus to distance matrices, a 2-D map, and outlier scores.

Two stories.  Clustering: four groups of Markov chains with different
transition matrices; the db dissimilarity (component correlations plus
marginals) keeps within-group distances well below between-group ones, and
the 2-D scaling map shows four separated clouds.  Outlier detection: inside
one homogeneous group, two planted series from a different model family get
the largest distance sums, and the boxplot rule counts them without being
told how many to look for.
"""

import numpy as np

import catseries as cs

transitions = [
    [[0.8, 0.1, 0.1], [0.1, 0.8, 0.1], [0.1, 0.1, 0.8]],
    [[0.1, 0.8, 0.1], [0.1, 0.1, 0.8], [0.8, 0.1, 0.1]],
    [[0.34, 0.33, 0.33], [0.33, 0.34, 0.33], [0.33, 0.33, 0.34]],
    [[0.6, 0.3, 0.1], [0.1, 0.6, 0.3], [0.3, 0.1, 0.6]],
]
models = [cs.MarkovChainModel(t, [1 / 3, 1 / 3, 1 / 3]) for t in transitions]
spec = cs.CorpusSpec(groups=tuple((m, 20) for m in models), length=600, seed=2024)
corpus, labels = cs.generate_corpus(spec)
labels = np.asarray(labels)

dm = cs.distance_matrix(corpus, metric="db", max_lag=1)
same = labels[:, None] == labels[None, :]
off_diag = ~np.eye(len(labels), dtype=bool)
print("-- clustering structure, 4 x 20 series --")
print("mean within-group distance: ", round(dm.values[same & off_diag].mean(), 4))
print("mean between-group distance:", round(dm.values[~same].mean(), 4))

embedding = cs.two_dimensional_scaling(dm)
print("\n2-D scaling group centroids (x, y):")
for g in range(1, 5):
    centroid = embedding.coordinates[labels == g].mean(axis=0)
    print(f"  group {g}: ({centroid[0]: .3f}, {centroid[1]: .3f})")
print("eigenvalue mass lost to clamping:", round(embedding.clamped_mass, 4))
# feed embedding.coordinates (or the distance matrix / feature vectors) to
# any external clustering algorithm from here

print("\n-- outlier detection inside one homogeneous group --")
anomaly = cs.NdarmaModel(1, 0, [0.6, 0.4], [0.2, 0.3, 0.5])
collection = [cs.generate_mc(models[0], 600, seed=5000 + i) for i in range(20)]
collection += [cs.generate_ndarma(anomaly, 600, seed=s) for s in (7000, 7001)]

dm_out = cs.distance_matrix(collection, metric="db", max_lag=1)
scores, order = cs.outlier_scores(dm_out)
print("planted anomalies sit at indices 20 and 21")
print("top-4 by distance-sum score:", order[:4].tolist())

box = cs.boxplot_outlier_count(scores, range_factor=1.0)
print(f"boxplot rule flags {box.count} series above {box.threshold:.3f}: {list(box.indices)}")

# the dcc metric tells the same story from different features
dm_cc = cs.distance_matrix(collection, metric="dcc", max_lag=1)
_, order_cc = cs.outlier_scores(dm_cc)
print("dcc metric top-2:", sorted(order_cc[:2].tolist()))
