//! Reference values from 40-digit arbitrary-precision evaluation at
//! pseudo-random points.

/// `(p, t, E_p(t))`
pub const EXPINT: [(f64, f64, f64); 100] = [
    (-0.227782, 3.785628, 0.006303107369975217),
    (0.400773, 10.233666, 3.3898364363408212e-06),
    (-1.691909, 18.41751, 5.965733385004755e-10),
    (0.110533, 0.027368, 25.335326547952064),
    (0.062286, 0.011694, 66.35227975988228),
    (1.665268, 2.536566, 0.020318138684593562),
    (1.695721, 16.580968, 3.4601584569820803e-09),
    (0.650612, 8.422274, 2.4400472264621202e-05),
    (-1.391961, 1.789005, 0.1788449211351998),
    (0.579715, 0.826167, 0.3701105559378284),
    (-1.912636, 2.654105, 0.052021483765088375),
    (-1.946422, 0.021468, 156693.516057191),
    (-0.44086, 0.016385, 330.49189114741955),
    (0.382227, 3.176201, 0.011981160006108724),
    (1.143831, 3.25029, 0.0092354622334172),
    (-1.35829, 0.268306, 26.56383269220402),
    (0.463713, 0.600819, 0.6403075396551586),
    (0.430605, 10.538269, 2.423610546078132e-06),
    (1.007124, 1.184328, 0.16193228899135553),
    (1.042152, 12.842537, 1.9147354472827652e-07),
    (0.898968, 0.010466, 5.031241452849684),
    (1.027214, 17.299513, 1.6789674317803726e-09),
    (0.497228, 0.427969, 0.963726341348169),
    (-0.738834, 0.381496, 4.44303190517343),
    (-1.070038, 0.010879, 11963.411172509954),
    (-1.832169, 28.036046, 2.53899093884364e-14),
    (1.916925, 0.170194, 0.6455895501998246),
    (1.406237, 0.963397, 0.1959349022537947),
    (-0.04542, 7.596897, 6.643535150347196e-05),
    (1.380393, 0.010053, 1.9843831162134498),
    (-0.187651, 0.13881, 8.835093064605305),
    (1.762896, 9.458703, 7.037666427745544e-06),
    (0.251371, 0.043521, 11.513285579802028),
    (-1.863744, 2.083535, 0.13433439745259376),
    (0.098489, 0.022597, 31.42428278409951),
    (0.90793, 0.935213, 0.2556614702814947),
    (1.94367, 0.065329, 0.8266207427921707),
    (1.028007, 1.562833, 0.09027752338895484),
    (1.091858, 18.218074, 6.358784590472232e-10),
    (-1.735247, 0.016397, 121399.26277177026),
    (-0.839932, 0.013779, 2500.018314331252),
    (-0.920009, 0.984742, 0.7172267678881507),
    (-1.753557, 0.114691, 626.6968942733713),
    (1.723224, 0.089021, 0.9183788775520224),
    (-1.783176, 5.3051, 0.001295641388977239),
    (-0.133232, 2.139821, 0.057602647824100024),
    (1.446268, 0.010918, 1.7812326529245008),
    (1.107703, 5.975242, 0.00036532012825809255),
    (1.1766, 1.459835, 0.09984679481413783),
    (0.743288, 0.01596, 6.315499812753907),
    (-1.550952, 0.109354, 389.8997933398692),
    (1.403071, 2.786281, 0.015670107228985035),
    (0.901877, 6.283445, 0.000263579626509252),
    (-1.874471, 0.627071, 6.614233921574073),
    (0.864349, 0.028612, 3.8505414488173084),
    (0.195974, 0.043106, 13.308521556629453),
    (1.155372, 0.04722, 2.0151062941891293),
    (1.036677, 0.101753, 1.7297725495646232),
    (-0.922904, 0.035281, 601.5379707440859),
    (-0.742572, 0.013669, 1625.6119753267824),
    (1.998476, 0.236227, 0.5328788338123719),
    (-1.122026, 2.566426, 0.04350248574675785),
    (-0.963989, 0.018155, 2587.013336941113),
    (0.167174, 0.027285, 21.481940622892914),
    (-0.114674, 0.268727, 3.310192723245806),
    (1.994472, 6.545301, 0.00017226741832123638),
    (-1.737377, 0.02727, 30480.59219463095),
    (0.926867, 1.185558, 0.1669933932531678),
    (1.722123, 0.12849, 0.8204326602273068),
    (-1.718481, 0.025142, 34974.10343941754),
    (0.02262, 3.6223, 0.007339579962809784),
    (-0.89644, 0.022514, 1278.8476300132697),
    (-1.546584, 0.013309, 82245.17637658895),
    (-1.627484, 0.035932, 9113.703352431163),
    (1.93764, 23.811724, 1.7746840208724737e-12),
    (-0.547159, 0.013304, 709.3212216065801),
    (-1.529005, 19.607449, 1.6811670352468278e-10),
    (-1.327889, 0.010722, 45668.60608685442),
    (0.64555, 21.531803, 2.0112822310402377e-11),
    (1.465079, 0.092798, 1.139624001226561),
    (0.994338, 25.742371, 2.475639267437399e-13),
    (1.939731, 0.658481, 0.25739399396319884),
    (0.064556, 16.239744, 5.432017220303193e-09),
    (-0.589561, 0.510738, 2.1326583376310024),
    (-0.578828, 0.443668, 2.7296673820351742),
    (0.663709, 0.406719, 0.8905699861482176),
    (1.917316, 18.793667, 3.338922483951372e-10),
    (-1.098578, 7.37307, 9.800887772037937e-05),
    (-0.967099, 0.057481, 271.3109924773046),
    (0.479582, 0.150782, 2.7357776685636157),
    (-1.093185, 4.608617, 0.002684181333449416),
    (-0.732346, 0.075265, 80.29007484485835),
    (0.080136, 0.010229, 70.22975687003185),
    (-1.762396, 0.085271, 1459.671507750564),
    (-0.489209, 0.537982, 1.7385367966393734),
    (0.715689, 0.325511, 1.069983570162127),
    (-0.649237, 0.029398, 301.6434640034541),
    (-0.790079, 14.766528, 2.7545161046193628e-08),
    (1.553776, 27.049059, 6.267718158429759e-14),
    (-1.544227, 12.220755, 4.563152328772301e-07),
];

/// `(a, b, t, M(a, b, t))`
pub const KUMMER: [(f64, f64, f64, f64); 100] = [
    (1.070839, 2.242097, 2.630006, 4.5462791974010655),
    (0.277728, 2.125199, 15.971114, 18561.057039168307),
    (0.394672, 2.381037, 35.313339, 1033038538212.7632),
    (1.40879, 2.14755, 9.283117, 2418.621155662515),
    (1.250199, 2.025986, -34.883688, 0.010079054884733868),
    (0.819834, 2.091087, 30.131602, 147628211925.06787),
    (0.513666, 1.642654, -39.244001, 0.14490860341681416),
    (1.267669, 2.597357, 20.253261, 17753708.839186743),
    (0.438045, 1.171359, 28.928397, 144276589036.74203),
    (0.824635, 2.303241, -34.616672, 0.07016324017739071),
    (0.219086, 1.360412, -6.443813, 0.628903632704008),
    (0.658676, 1.090293, -20.309383, 0.06531011305825161),
    (0.880979, 1.590847, 3.840723, 15.018915686881813),
    (0.980156, 1.612061, -7.685936, 0.0904656868773225),
    (0.870275, 1.626175, -17.695322, 0.06119743366976063),
    (0.577573, 1.774927, -28.141369, 0.1458688329037946),
    (0.734221, 2.185232, 32.521741, 755078963953.1964),
    (0.40387, 0.493685, -9.287215, 0.0719205123619343),
    (1.256146, 2.343889, -35.344565, 0.01417962738051748),
    (1.091336, 1.644081, -20.692033, 0.02101084185061782),
    (0.757056, 1.982073, -35.275949, 0.07296720770235805),
    (1.181759, 2.104777, 7.510393, 314.4197938356618),
    (1.404191, 2.719821, 21.909549, 97312359.62686752),
    (0.588603, 2.409207, -15.152895, 0.26061375404423287),
    (1.093797, 2.478126, 22.344304, 93575603.3904692),
    (0.257333, 0.401091, -2.557799, 0.3383068845830256),
    (0.948254, 2.851836, -1.614041, 0.6265039435783252),
    (1.477376, 2.698289, 0.837726, 1.6190250909316501),
    (0.885547, 1.581906, -33.90185, 0.030438367684208757),
    (1.409911, 2.021756, 22.806643, 1334186567.861442),
    (0.652707, 0.868934, 11.702264, 56740.52899924611),
    (0.049592, 0.223664, -13.85397, 0.6755342619996623),
    (0.065789, 1.51911, 8.741546, 20.818264242974138),
    (1.095669, 2.417695, -33.176032, 0.02996700450439248),
    (1.434312, 2.377389, 16.143792, 1001744.4309599765),
    (0.479394, 0.805493, 30.927477, 5562012537274.447),
    (0.123208, 0.753016, 32.719767, 2930076205357.471),
    (0.525136, 0.840322, -29.475112, 0.06766871292433349),
    (1.240059, 1.451206, 7.541661, 1190.6931350085642),
    (0.581141, 1.333398, 2.826383, 5.172806171613887),
    (0.747255, 0.948631, -9.512395, 0.045400868856906924),
    (0.275155, 2.245855, 32.330617, 42093338946.690445),
    (1.055136, 1.322077, 17.976762, 27301528.80326393),
    (0.202618, 1.577411, -20.744858, 0.5403068867287855),
    (1.126732, 2.204717, -39.424174, 0.01826777973118172),
    (0.597066, 1.841885, 34.655303, 8711404039464.853),
    (0.793655, 2.361865, -4.820265, 0.34984848651964556),
    (0.75588, 1.976507, -16.317122, 0.13002570496284338),
    (1.230117, 2.735677, 1.484793, 2.0986051566313657),
    (0.067705, 0.670276, -32.480743, 0.718433760018162),
    (1.322206, 3.29683, 16.00496, 107082.39935677213),
    (1.258956, 1.495524, -32.469189, 0.002974256027720998),
    (0.514114, 1.334571, 4.404898, 14.311878241765992),
    (0.160248, 0.364139, 4.2795, 24.302709865984344),
    (1.386137, 2.256306, -10.180546, 0.04254548112142796),
    (0.793979, 1.751293, -26.923552, 0.06564334499852136),
    (0.455012, 1.59292, 25.746459, 1773566927.520857),
    (1.097581, 2.595398, -3.09464, 0.3609738576382978),
    (1.406563, 2.654877, 27.570704, 24713320457.56769),
    (0.545943, 1.246571, 32.774862, 8367391820364.987),
    (0.651161, 2.026843, -22.173131, 0.14959128352116313),
    (1.41784, 2.670408, -0.756437, 0.6823919509257563),
    (0.500459, 0.849584, -10.326031, 0.14048670587006093),
    (0.747288, 1.638507, 26.115633, 8849873081.494326),
    (0.542549, 0.924376, -30.967213, 0.07084814797446125),
    (1.325835, 1.80035, -31.763397, 0.005209983549640959),
    (0.799833, 2.454512, -4.569814, 0.37097510628174934),
    (1.482054, 3.173388, -17.454905, 0.03531039791747419),
    (0.293854, 0.883557, -0.759279, 0.8019521566902228),
    (0.755985, 2.430031, -22.211372, 0.13134977966361192),
    (1.12806, 1.979541, -9.622791, 0.07080923723256967),
    (1.136711, 1.25625, -24.571827, 0.003146054369580681),
    (0.402459, 1.74808, 26.531815, 1740307661.2681925),
    (1.095439, 2.510653, 27.002846, 7028730648.783398),
    (0.333181, 0.740137, -38.658444, 0.16908185647773766),
    (1.101718, 1.412778, 21.036496, 493809534.1047009),
    (0.414736, 1.34931, 18.580237, 3289431.2788404557),
    (0.713074, 1.10538, -24.81415, 0.043268058123982774),
    (0.148167, 1.264025, 20.027807, 2657667.068471093),
    (1.231745, 2.946297, -27.580435, 0.03398588621962859),
    (0.431865, 1.919307, -5.258011, 0.5103652459808055),
    (0.771861, 0.847812, -8.384683, 0.01917115085950689),
    (0.652329, 2.528379, 2.145632, 2.006529854177582),
    (0.127892, 1.325309, 12.666739, 2029.5407189199007),
    (0.324403, 1.012399, 20.25182, 29087282.281163342),
    (0.197756, 0.854713, -20.187643, 0.4474111246133234),
    (1.460572, 2.451505, 6.981776, 211.36661107659705),
    (0.339938, 1.940353, -14.596491, 0.4329293212937443),
    (0.102243, 2.066409, -24.663055, 0.7501244325678489),
    (0.263197, 2.020447, 1.712826, 1.3380631789859672),
    (1.448698, 2.963092, 21.294324, 36389593.96836822),
    (0.548985, 1.825735, 25.541435, 1173167071.9930832),
    (1.117957, 2.063526, -8.355193, 0.09340908427946193),
    (0.576304, 1.308468, -0.863489, 0.7105838772255574),
    (1.293841, 1.71956, -30.882912, 0.005313291409640331),
    (0.754561, 1.205078, -4.047741, 0.18993965574022853),
    (0.512778, 0.915245, 8.220446, 1000.0461511665196),
    (1.406899, 2.1162, -31.405148, 0.006524643328921411),
    (0.308695, 0.871889, 8.151662, 424.52433998523327),
    (0.247566, 2.130651, 2.130171, 1.4122364587697314),
];
