//! Published design matrices transcribed to four decimals.
#![allow(dead_code, clippy::approx_constant)]

/// 18-run, 7-factor design refined over the continuous cube.
pub const REFINED_18X7: &[&[f64]] = &[
    &[0.9080, 0.5238, 0.6906, 0.8001, 0.7509, 0.3578, 0.9071],
    &[0.3050, 0.5838, 0.6351, 0.0531, 0.6986, 0.7447, 0.1393],
    &[0.7475, 0.2567, 0.4738, 0.2078, 0.9052, 0.8544, 0.6415],
    &[0.9457, 0.1462, 0.3609, 0.4796, 0.3579, 0.6288, 0.0542],
    &[0.4704, 0.6925, 0.5757, 0.9079, 0.1977, 0.2049, 0.0972],
    &[0.1438, 0.4809, 0.0946, 0.2525, 0.0549, 0.5210, 0.2979],
    &[0.5264, 0.0986, 0.8501, 0.1441, 0.1533, 0.4260, 0.7990],
    &[0.3570, 0.0529, 0.1464, 0.5804, 0.8045, 0.2527, 0.4264],
    &[0.0957, 0.7482, 0.9468, 0.5135, 0.8528, 0.5862, 0.5889],
    &[0.6366, 0.4197, 0.0528, 0.9471, 0.5825, 0.6931, 0.7531],
    &[0.0546, 0.3076, 0.4149, 0.6973, 0.3062, 0.0959, 0.6922],
    &[0.2009, 0.1964, 0.7458, 0.8505, 0.4748, 0.9032, 0.3564],
    &[0.7971, 0.8605, 0.8011, 0.6355, 0.0960, 0.7947, 0.4694],
    &[0.4159, 0.6462, 0.2524, 0.4225, 0.2570, 0.9456, 0.9456],
    &[0.5711, 0.9058, 0.2994, 0.7430, 0.9456, 0.4756, 0.2040],
    &[0.2435, 0.9512, 0.5211, 0.3061, 0.5330, 0.3026, 0.8508],
    &[0.6876, 0.3689, 0.9043, 0.3633, 0.6321, 0.0539, 0.2502],
    &[0.8534, 0.7923, 0.1928, 0.0974, 0.4286, 0.1500, 0.5260],
];

/// 27-run, 13-factor design refined over the continuous cube.
pub const REFINED_27X13: &[&[f64]] = &[
    &[0.0971, 0.8438, 0.2913, 0.5290, 0.7735, 0.4409, 0.8424, 0.6708, 0.4005, 0.1238, 0.3293, 0.6793, 0.8683],
    &[0.5663, 0.8711, 0.7423, 0.3992, 0.1332, 0.1908, 0.1838, 0.3580, 0.5025, 0.8424, 0.5971, 0.7083, 0.0939],
    &[0.7020, 0.0962, 0.2268, 0.1853, 0.5957, 0.3299, 0.5591, 0.0915, 0.1942, 0.4693, 0.6391, 0.7802, 0.7763],
    &[0.1914, 0.5124, 0.6684, 0.7741, 0.5287, 0.1272, 0.2272, 0.2965, 0.3338, 0.2203, 0.8354, 0.2634, 0.8097],
    &[0.2906, 0.2188, 0.4044, 0.3498, 0.6775, 0.1570, 0.9011, 0.1962, 0.8988, 0.5647, 0.4023, 0.3885, 0.1243],
    &[0.4771, 0.1907, 0.8427, 0.9289, 0.7377, 0.9084, 0.0971, 0.5278, 0.2559, 0.4013, 0.4324, 0.7423, 0.5594],
    &[0.3673, 0.1224, 0.8728, 0.6715, 0.3999, 0.2237, 0.6704, 0.8715, 0.6986, 0.8150, 0.2553, 0.5226, 0.7389],
    &[0.8424, 0.4354, 0.9068, 0.8085, 0.9281, 0.4679, 0.7395, 0.1242, 0.4656, 0.7069, 0.5278, 0.1253, 0.4302],
    &[0.0717, 0.1596, 0.2587, 0.2915, 0.2922, 0.5324, 0.3007, 0.5610, 0.5250, 0.9289, 0.8047, 0.0925, 0.5224],
    &[0.2272, 0.6788, 0.5259, 0.7056, 0.0705, 0.8810, 0.6402, 0.1554, 0.6313, 0.6011, 0.9295, 0.6398, 0.6283],
    &[0.9267, 0.7367, 0.8156, 0.3238, 0.2645, 0.5657, 0.3593, 0.2191, 0.1246, 0.0966, 0.3680, 0.5100, 0.6731],
    &[0.9006, 0.3594, 0.1018, 0.4724, 0.8127, 0.2550, 0.1526, 0.7021, 0.6665, 0.2897, 0.9045, 0.5622, 0.3623],
    &[0.6695, 0.0708, 0.4881, 0.6381, 0.5080, 0.8414, 0.4007, 0.9288, 0.4352, 0.0711, 0.6766, 0.3326, 0.0710],
    &[0.5170, 0.4010, 0.4748, 0.1214, 0.0934, 0.4096, 0.0724, 0.7373, 0.2922, 0.6378, 0.1547, 0.3624, 0.9275],
    &[0.1574, 0.3288, 0.6032, 0.4884, 0.8388, 0.7119, 0.4358, 0.2642, 0.0962, 0.8977, 0.0973, 0.5941, 0.2872],
    &[0.6397, 0.8051, 0.1902, 0.9022, 0.7080, 0.5996, 0.4721, 0.4047, 0.8367, 0.8721, 0.7358, 0.4241, 0.9042],
    &[0.8098, 0.7682, 0.6383, 0.7497, 0.5623, 0.3728, 0.3233, 0.7705, 0.9292, 0.5323, 0.1828, 0.8078, 0.2576],
    &[0.4356, 0.9014, 0.7820, 0.2190, 0.6455, 0.6712, 0.8026, 0.8402, 0.2229, 0.5137, 0.8732, 0.2930, 0.3339],
    &[0.5292, 0.2573, 0.1643, 0.8350, 0.2219, 0.6356, 0.7776, 0.3306, 0.5549, 0.1957, 0.1271, 0.8760, 0.3938],
    &[0.3232, 0.5606, 0.3683, 0.2547, 0.9073, 0.8088, 0.2573, 0.9027, 0.7356, 0.6824, 0.5189, 0.9025, 0.6990],
    &[0.1306, 0.4634, 0.9265, 0.0734, 0.3654, 0.4859, 0.5235, 0.4446, 0.8092, 0.1592, 0.7133, 0.8388, 0.2217],
    &[0.4013, 0.9279, 0.3244, 0.5670, 0.4259, 0.7460, 0.1239, 0.0721, 0.7729, 0.3316, 0.2306, 0.1871, 0.4684],
    &[0.8678, 0.5964, 0.0736, 0.0967, 0.4722, 0.9262, 0.7000, 0.4762, 0.3608, 0.7794, 0.2910, 0.4719, 0.1625],
    &[0.7417, 0.5304, 0.4385, 0.6016, 0.3333, 0.0932, 0.9281, 0.5975, 0.0718, 0.7427, 0.7742, 0.9281, 0.5089],
    &[0.7788, 0.3003, 0.7021, 0.4343, 0.1600, 0.7792, 0.8683, 0.6321, 0.8693, 0.3659, 0.5660, 0.2166, 0.8376],
    &[0.2576, 0.6397, 0.1321, 0.8754, 0.1864, 0.2929, 0.5135, 0.8070, 0.1546, 0.4325, 0.4745, 0.1554, 0.1941],
    &[0.6064, 0.6963, 0.5617, 0.1565, 0.8705, 0.0711, 0.5982, 0.5135, 0.5994, 0.2536, 0.0715, 0.0715, 0.5914],
];

/// Nine-run lattice design (levels 1..=9) for the wood model.
pub const U9_LEVELS: &[&[usize]] = &[
    &[4, 1, 7, 5],
    &[1, 3, 4, 3],
    &[9, 9, 5, 4],
    &[6, 6, 6, 9],
    &[5, 7, 2, 1],
    &[2, 8, 8, 7],
    &[3, 5, 1, 6],
    &[8, 2, 3, 8],
    &[7, 4, 9, 2],
];

/// The nine-run lattice design mapped endpoint-inclusively into [-2, 2]^4.
pub const U9_SCALED: &[&[f64]] = &[
    &[-0.5, -2.0, 1.0, 0.0],
    &[-2.0, -1.0, -0.5, -1.0],
    &[2.0, 2.0, 0.0, -0.5],
    &[0.5, 0.5, 0.5, 2.0],
    &[0.0, 1.0, -1.5, -2.0],
    &[-1.5, 1.5, 1.5, 1.0],
    &[-1.0, 0.0, -2.0, 0.5],
    &[1.5, -1.5, -1.0, 1.5],
    &[1.0, -0.5, 2.0, -1.5],
];

/// Nine-run continuous design in the unit cube.
pub const U9_NEW_UNIT: &[&[f64]] = &[
    &[0.3942, 0.0690, 0.7114, 0.5978],
    &[0.0743, 0.2762, 0.3966, 0.2761],
    &[0.9303, 0.7215, 0.6060, 0.3940],
    &[0.6086, 0.5114, 0.4910, 0.7172],
    &[0.5000, 0.9207, 0.2751, 0.0793],
    &[0.1758, 0.8242, 0.8242, 0.8242],
    &[0.2837, 0.6065, 0.0658, 0.5000],
    &[0.8208, 0.1875, 0.1792, 0.9065],
    &[0.7127, 0.3945, 0.9214, 0.1705],
];

/// The nine-run continuous design scaled into [-2, 2]^4.
pub const U9_NEW_SCALED: &[&[f64]] = &[
    &[-0.4232, -1.7242, 0.8457, 0.3912],
    &[-1.7030, -0.8953, -0.4136, -0.8957],
    &[1.7214, 0.8861, 0.4240, -0.4240],
    &[0.4344, 0.0456, -0.0360, 0.8689],
    &[0.0000, 1.6830, -0.8997, -1.6830],
    &[-1.2969, 1.2969, 1.2969, 1.2969],
    &[-0.8653, 0.4260, -1.7370, 0.0000],
    &[1.2833, -1.2501, -1.2833, 1.6262],
    &[0.8509, -0.4220, 1.6858, -1.3181],
];

/// Sixteen-run lattice design (levels 1..=16).
pub const U16_LEVELS: &[&[usize]] = &[
    &[1, 10, 4, 6],
    &[2, 4, 13, 15],
    &[3, 13, 10, 10],
    &[4, 8, 7, 1],
    &[5, 6, 1, 2],
    &[6, 15, 15, 4],
    &[7, 1, 11, 7],
    &[8, 16, 8, 14],
    &[9, 3, 3, 3],
    &[10, 7, 16, 9],
    &[11, 11, 5, 16],
    &[12, 12, 12, 2],
    &[13, 2, 6, 11],
    &[14, 14, 2, 8],
    &[15, 9, 14, 13],
    &[16, 5, 9, 5],
];

/// The sixteen-run lattice design scaled into [-2, 2]^4, two decimals.
pub const U16_SCALED: &[&[f64]] = &[
    &[-2.00, 0.40, -1.20, -0.67],
    &[-1.73, -1.20, 1.20, 1.73],
    &[-1.47, 1.20, 0.40, 0.40],
    &[-1.20, -0.13, -0.40, -2.00],
    &[-0.93, -0.67, -2.00, -1.73],
    &[-0.67, 1.73, 1.73, -1.20],
    &[-0.40, -2.00, 0.67, -0.40],
    &[-0.13, 2.00, -0.13, 1.47],
    &[0.13, -1.47, -1.47, -1.47],
    &[0.40, -0.40, 2.00, 0.13],
    &[0.67, 0.67, -0.93, 2.00],
    &[0.93, 0.93, 0.93, -1.73],
    &[1.20, -1.73, -0.67, 0.67],
    &[1.47, 1.47, -1.73, -0.13],
    &[1.73, 0.13, 1.47, 1.20],
    &[2.00, -0.93, 0.13, -0.93],
];

/// Sixteen-run continuous design in the unit cube.
pub const U16_NEW_UNIT: &[&[f64]] = &[
    &[0.4678, 0.6593, 0.4717, 0.7195],
    &[0.2873, 0.3469, 0.0440, 0.7769],
    &[0.1599, 0.7847, 0.5913, 0.5975],
    &[0.0415, 0.5965, 0.2213, 0.3425],
    &[0.7808, 0.0927, 0.3474, 0.6514],
    &[0.2165, 0.4656, 0.4057, 0.0389],
    &[0.7252, 0.7091, 0.9508, 0.0981],
    &[0.3397, 0.9060, 0.7747, 0.2254],
    &[0.8519, 0.5300, 0.7172, 0.8348],
    &[0.6437, 0.9514, 0.2860, 0.9514],
    &[0.4103, 0.0373, 0.6566, 0.4060],
    &[0.5944, 0.4045, 0.8392, 0.5308],
    &[0.9013, 0.8316, 0.0971, 0.4668],
    &[0.9600, 0.2836, 0.5329, 0.2779],
    &[0.5341, 0.2096, 0.1563, 0.1535],
    &[0.1032, 0.1681, 0.8969, 0.8969],
];

/// The sixteen-run continuous design scaled into [-2, 2]^4.
pub const U16_NEW_SCALED: &[&[f64]] = &[
    &[-0.1290, 0.6370, -0.1134, 0.8778],
    &[-0.8510, -0.6126, -1.8242, 1.1074],
    &[-1.3606, 1.1386, 0.3650, 0.3898],
    &[-1.8342, 0.3858, -1.1150, -0.6302],
    &[1.1230, -1.6294, -0.6106, 0.6054],
    &[-1.1342, -0.1378, -0.3774, -1.8446],
    &[0.9006, 0.8362, 1.8030, -1.6078],
    &[-0.6414, 1.6238, 1.0986, -1.0986],
    &[1.4074, 0.1198, 0.8686, 1.3390],
    &[0.5746, 1.8054, -0.8562, 1.8054],
    &[-0.3590, -1.8510, 0.6262, -0.3762],
    &[0.3774, -0.3822, 1.3566, 0.1230],
    &[1.6050, 1.3262, -1.6118, -0.1330],
    &[1.8398, -0.8658, 0.1314, -0.8886],
    &[0.1362, -1.1618, -1.3750, -1.3862],
    &[-1.5874, -1.3278, 1.5874, 1.5874],
];
