"""Parameter counts listed in the published hyperparameter tables."""

# (kind, d, L, p, q, count) rows from the published hyperparameter tables
GOLDEN_COUNTS = [
    ('DANN', 6, 1, 16, 11, 1249),
    ('DANN', 6, 1, 256, 7, 12801),
    ('DANN', 6, 1, 64, 9, 4097),
    ('DANN', 6, 3, 1024, 5, 10524673),
    ('DANN', 6, 3, 16, 5, 3169),
    ('DANN', 6, 3, 16, 7, 4417),
    ('DANN', 6, 3, 256, 11, 1462273),
    ('DANN', 6, 3, 256, 5, 665089),
    ('DANN', 6, 3, 256, 7, 930817),
    ('DANN', 6, 3, 256, 9, 1196545),
    ('DANN', 6, 3, 64, 11, 95233),
    ('DANN', 6, 3, 64, 5, 43393),
    ('DANN', 6, 5, 1024, 5, 21012481),
    ('DANN', 6, 5, 16, 5, 5761),
    ('DANN', 6, 5, 16, 9, 10305),
    ('DANN', 6, 5, 4, 11, 1033),
    ('DANN', 6, 5, 4, 5, 481),
    ('DANN', 6, 5, 4, 7, 665),
    ('DANN', 6, 5, 64, 5, 84481),
    ('DANN', 6, 9, 4, 11, 1753),
    ('DANN', 8, 1, 16, 9, 1313),
    ('DANN', 8, 1, 4, 7, 257),
    ('DANN', 8, 1, 4, 9, 329),
    ('DANN', 8, 3, 256, 3, 400897),
    ('DANN', 8, 3, 64, 3, 26497),
    ('DANN', 8, 5, 256, 3, 794625),
    ('DANN', 8, 5, 64, 3, 51201),
    ('DNN', 6, 10, 128, None, 149633),
    ('DNN', 6, 10, 32, None, 9761),
    ('DNN', 6, 12, 128, None, 182657),
    ('DNN', 6, 14, 128, None, 215681),
    ('DNN', 6, 14, 32, None, 13985),
    ('DNN', 6, 16, 128, None, 248705),
    ('DNN', 6, 16, 32, None, 16097),
    ('DNN', 6, 16, 512, None, 3943937),
    ('DNN', 6, 18, 128, None, 281729),
    ('DNN', 6, 18, 32, None, 18209),
    ('DNN', 6, 6, 128, None, 83585),
    ('DNN', 6, 8, 128, None, 116609),
    ('DNN', 8, 10, 512, None, 2369025),
    ('DNN', 8, 14, 512, None, 3419649),
    ('DNN', 8, 16, 512, None, 3944961),
    ('DNN', 8, 8, 2048, None, 29394945),
    ('DNN', 8, 8, 512, None, 1843713),
    ('HDANN1', 6, 3, 1024, 3, 2119681),
    ('HDANN1', 6, 3, 1024, 7, 2144257),
    ('HDANN1', 6, 3, 16, 5, 1057),
    ('HDANN1', 6, 3, 16, 7, 1249),
    ('HDANN1', 6, 3, 64, 3, 9601),
    ('HDANN1', 6, 3, 64, 5, 10369),
    ('HDANN1', 6, 5, 1024, 3, 4218881),
    ('HDANN1', 6, 5, 1024, 5, 4231169),
    ('HDANN1', 6, 5, 1024, 7, 4243457),
    ('HDANN1', 6, 5, 1024, 9, 4255745),
    ('HDANN1', 6, 5, 16, 3, 1409),
    ('HDANN1', 6, 5, 16, 5, 1601),
    ('HDANN1', 6, 5, 16, 7, 1793),
    ('HDANN1', 6, 5, 16, 9, 1985),
    ('HDANN1', 6, 7, 1024, 5, 6330369),
    ('HDANN1', 6, 7, 1024, 7, 6342657),
    ('HDANN1', 6, 7, 16, 3, 1953),
    ('HDANN1', 6, 7, 16, 5, 2145),
    ('HDANN1', 6, 7, 4, 3, 201),
    ('HDANN1', 6, 7, 64, 3, 26241),
    ('HDANN1', 6, 9, 1024, 5, 8429569),
    ('HDANN1', 6, 9, 1024, 7, 8441857),
    ('HDANN1', 6, 9, 256, 3, 531457),
    ('HDANN1', 8, 1, 16, 11, 1441),
    ('HDANN1', 8, 3, 4, 7, 273),
    ('HDANN1', 8, 3, 4, 9, 337),
    ('HDANN1', 8, 5, 256, 5, 273921),
    ('HDANN1', 8, 5, 256, 7, 278017),
    ('HDANN1', 8, 5, 256, 9, 282113),
    ('HDANN1', 8, 7, 256, 11, 417793),
    ('HDANN1', 8, 7, 256, 7, 409601),
    ('HDANN1', 8, 7, 4, 11, 481),
    ('HDANN2', 6, 3, 1024, 7, 2113537),
    ('HDANN2', 6, 3, 1024, 9, 2115585),
    ('HDANN2', 6, 3, 256, 9, 135681),
    ('HDANN2', 6, 3, 64, 7, 9217),
    ('HDANN2', 6, 5, 1024, 11, 4216833),
    ('HDANN2', 6, 5, 1024, 3, 4208641),
    ('HDANN2', 6, 5, 1024, 5, 4210689),
    ('HDANN2', 6, 5, 1024, 7, 4212737),
    ('HDANN2', 6, 5, 256, 11, 267777),
    ('HDANN2', 6, 5, 256, 3, 265729),
    ('HDANN2', 6, 5, 256, 5, 266241),
    ('HDANN2', 6, 5, 64, 3, 17281),
    ('HDANN2', 6, 5, 64, 5, 17409),
    ('HDANN2', 6, 5, 64, 7, 17537),
    ('HDANN2', 6, 5, 64, 9, 17665),
    ('HDANN2', 6, 7, 1024, 3, 6307841),
    ('HDANN2', 6, 7, 256, 11, 399361),
    ('HDANN2', 6, 7, 256, 3, 397313),
    ('HDANN2', 6, 7, 256, 5, 397825),
    ('HDANN2', 6, 7, 256, 7, 398337),
    ('HDANN2', 6, 7, 256, 9, 398849),
    ('HDANN2', 6, 7, 64, 3, 25601),
    ('HDANN2', 6, 7, 64, 7, 25857),
    ('HDANN2', 6, 9, 16, 11, 2465),
    ('HDANN2', 6, 9, 16, 3, 2337),
    ('HDANN2', 6, 9, 256, 11, 530945),
    ('HDANN2', 6, 9, 256, 5, 529409),
    ('HDANN2', 6, 9, 64, 3, 33921),
    ('HDANN2', 8, 5, 1024, 3, 4210689),
    ('HDANN2', 8, 5, 16, 7, 1345),
    ('HDANN2', 8, 5, 16, 9, 1377),
    ('HDANN2', 8, 5, 64, 9, 17793),
    ('HDANN2', 8, 7, 1024, 3, 6309889),
    ('HDANN2', 8, 7, 16, 7, 1889),
    ('HDANN2', 8, 7, 256, 7, 398849),
    ('HDANN2', 8, 9, 1024, 11, 8417281),
    ('HDANN2', 8, 9, 1024, 3, 8409089),
    ('HDANN3', 6, 3, 16, 7, 1345),
    ('HDANN3', 6, 3, 4, 11, 353),
    ('HDANN3', 6, 5, 16, 11, 2337),
    ('HDANN3', 6, 5, 16, 3, 1441),
    ('HDANN3', 6, 5, 16, 5, 1665),
    ('HDANN3', 6, 5, 16, 7, 1889),
    ('HDANN3', 6, 5, 4, 11, 393),
    ('HDANN3', 6, 5, 4, 3, 169),
    ('HDANN3', 6, 5, 4, 7, 281),
    ('HDANN3', 6, 7, 1024, 11, 6377473),
    ('HDANN3', 6, 7, 1024, 7, 6348801),
    ('HDANN3', 6, 7, 16, 11, 2881),
    ('HDANN3', 6, 7, 16, 5, 2209),
    ('HDANN3', 6, 7, 16, 9, 2657),
    ('HDANN3', 6, 7, 256, 11, 414721),
    ('HDANN3', 6, 7, 256, 7, 407553),
    ('HDANN3', 6, 7, 4, 9, 377),
    ('HDANN3', 6, 7, 64, 5, 27265),
    ('HDANN3', 6, 9, 1024, 11, 8476673),
    ('HDANN3', 6, 9, 1024, 5, 8433665),
    ('HDANN3', 6, 9, 1024, 7, 8448001),
    ('HDANN3', 6, 9, 1024, 9, 8462337),
    ('HDANN3', 6, 9, 256, 11, 546305),
    ('HDANN3', 6, 9, 256, 5, 535553),
    ('HDANN3', 6, 9, 64, 11, 38273),
    ('HDANN3', 6, 9, 64, 3, 34689),
    ('HDANN3', 6, 9, 64, 5, 35585),
    ('HDANN3', 8, 5, 4, 9, 409),
    ('HDANN3', 8, 7, 256, 7, 411137),
    ('HDANN3', 8, 7, 256, 9, 415745),
    ('HDANN3', 8, 9, 256, 11, 551937),
    ('HDANN3', 8, 9, 256, 7, 542721),
    ('HDANN3', 8, 9, 256, 9, 547329),
]

# Published HDANN3 rows with a single hidden layer. Each exceeds the closed
# form by exactly (p + 1) * p, the size of one extra p-to-p affine layer.
# The closed form is kept: it is what makes HDANN3 with L=1 coincide with
# the one-layer additive network.
HDANN3_L1_PUBLISHED = [
    (6, 1, 64, 7, 7361),
    (8, 1, 16, 11, 1873),
    (8, 1, 16, 9, 1585),
    (8, 1, 4, 9, 349),
]
