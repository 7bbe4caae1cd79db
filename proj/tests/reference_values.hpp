// Machine-generated reference data -- do not edit.
// Source: tests/oracles/reference.py (mpmath at 35 significant digits).
// Regenerate:  python3 tests/oracles/reference.py > tests/reference_values.hpp
#pragma once

#include <array>

namespace dclab::refvals {

// Dimensionless constants of one critical radial channel (kappa = +1).
struct ChannelConstants {
  double nu;             // Coulomb coupling
  double B;              // sqrt(1 - nu^2)
  double gamma_B;        // Gamma(B)
  double gamma_2B;       // Gamma(2B)
  double gamma_mB;       // Gamma(-B)
  double gamma_m2B;      // Gamma(-2B)
  double w0_inf;         // Wronskian of the fundamental pair (v0, v_inf)
  double q_plus;         // upper r^{+B} coefficient of v0
  double q_minus;        // lower r^{+B} coefficient of v0
  double q_scale;        // v0 scale against the unit-normalised r^{+B} series
  double gamma_tilde;    // v_inf scale against the unit-normalised r^{-B} series
  double gamma_nu;       // upper r^{-B} coefficient of v_inf
  double vinf_norm_sq;   // squared L2 norm of v_inf on (0, inf)
  double p_plus;         // upper r^{+B} coefficient of (S_D)^{-1} v_inf
  double p_minus;        // lower r^{+B} coefficient of (S_D)^{-1} v_inf
  double c_nu;           // boundary-ratio slope,  p_plus / gamma_nu
  double d_nu;           // boundary-ratio offset, q_plus / gamma_nu
  double sd_eigenvalue;  // gap eigenvalue of the distinguished extension (-B)
  double sd_inv_norm;    // reciprocal distance of that eigenvalue from zero
  double power_integral; // int_0^inf r^{-2B} e^{-2r} dr
};

inline constexpr ChannelConstants channel_nu090 {
    0.9,  // nu
    0.43588989435406733,  // B
    2.032369756145299,  // gamma_B
    1.0924886193958592,  // gamma_2B
    -3.6194214663333577,  // gamma_mB
    -8.41450910615938,  // gamma_m2B
    2.0985478772479405,  // w0_inf
    3.2782466815249265,  // q_plus
    -5.230223645779332,  // q_minus
    4.254235163652129,  // q_scale
    0.5375442220061036,  // gamma_tilde
    0.660865324185514,  // gamma_nu
    6.025879035247525,  // vinf_norm_sq
    -9.413327265364495,  // p_plus
    15.018334991760542,  // p_minus
    -14.243941875700598,  // c_nu
    4.960536680548664,  // d_nu
    -0.43588989435406733,  // sd_eigenvalue
    2.2941573387056176,  // sd_inv_norm
    6.711775959900085,  // power_integral
};

inline constexpr ChannelConstants channel_nu088 {
    0.88,  // nu
    0.4749736834815167,  // B
    1.864691011522888,  // gamma_B
    1.0314892923864571,  // gamma_2B
    -3.5580916268545013,  // gamma_mB
    -20.473873135737833,  // gamma_m2B
    6.21405464943074,  // w0_inf
    8.307534269252328,  // q_plus
    -13.924311842918224,  // q_minus
    11.115923056085276,  // q_scale
    0.5531690162135993,  // gamma_tilde
    0.6929247211172269,  // gamma_nu
    14.43642120088929,  // vinf_norm_sq
    -19.299969282171556,  // p_plus
    32.348803162732615,  // p_minus
    -27.852909116957953,  // c_nu
    11.98908628322251,  // d_nu
    -0.4749736834815167,  // sd_eigenvalue
    2.1053798026662975,  // sd_inv_norm
    18.785908699478878,  // power_integral
};

inline constexpr ChannelConstants channel_nu095 {
    0.95,  // nu
    0.3122498999199199,  // B
    2.8684987452951507,  // gamma_B
    1.4355622241584953,  // gamma_2B
    -4.220605065997034,  // gamma_mB
    -3.7905143476287284,  // gamma_m2B
    0.44382488192248987,  // w0_inf
    1.1628658701866548,  // q_plus
    -1.6062848650239245,  // q_minus
    1.3845753676052897,  // q_scale
    0.5004576789559603,  // gamma_tilde
    0.5805950431447572,  // gamma_nu
    2.307953569467994,  // vinf_norm_sq
    -6.047070692126053,  // p_plus
    8.352913590053783,  // p_minus
    -10.415298517487281,  // c_nu
    2.002886321398928,  // d_nu
    -0.3122498999199199,  // sd_eigenvalue
    3.2025630761017427,  // sd_inv_norm
    1.824709044570256,  // power_integral
};

// Pointwise closed-form solution samples: u0, u_inf, v0 components.
struct SolutionSample { double r, u0_up, u0_lo, uinf_up, uinf_lo, v0_up, v0_lo; };

inline constexpr std::array<SolutionSample, 11> solutions_nu090 {{
    {1e-08, 3774.1390820696042, -2365.588706078201, 2028.7677244939819, -1271.6102443265377, 0.001067880046485974, -0.0017037313056296392},
    {1e-07, 1383.336432704599, -867.0594129725349, 743.6074199728487, -466.08742584551777, 0.002913481956221881, -0.004648266127571679},
    {1e-06, 507.03274767887035, -317.8001512030635, 272.56047268858794, -170.84431682744759, 0.007948805932538012, -0.012681795574722323},
    {0.001, 24.845168656639554, -15.454456731225218, 13.516664734647192, -8.564911237329211, 0.16128787850345191, -0.25745731721576043},
    {0.1, 1.8416362263033434, 0.4376625345550438, 2.09219990368639, -1.622620348788358, 1.1022389911999027, -1.8578833154269685},
    {0.37, -0.6160774282828834, 3.816252767495957, 1.190376120827619, -1.0369187501986599, 1.5215449827094625, -3.088323375080914},
    {1.0, -0.8997160212022258, 7.838120883757198, 0.5576941218620158, -0.5194083508505735, 1.0413312705055933, -4.73274494329963},
    {2.0, 3.421522159223872, 16.736546066523818, 0.1949973833355997, -0.18715975219818587, -1.6442220838210402, -9.183793386597046},
    {5.0, 164.94008046879873, 254.84866041153452, 0.009366498398428208, -0.009196760148359141, -88.6532207348261, -137.00162165036437},
    {12.0, 213681.56101940043, 252235.674537676, 8.40984148606555e-06, -8.342750212098469e-06, -114863.28846681352, -135587.82943988257},
    {30.0, 14876023567435.271, 15866268377085.084, 1.2719118961111014e-13, -1.2677476412894415e-13, -7996520515101.456, -8528820890900.245},
}};

inline constexpr std::array<SolutionSample, 4> solutions_nu088 {{
    {1e-06, 886.472225744443, -528.87637444788, 490.38070797693535, -292.5776995115286, 0.011738961202232152, -0.019675759579613653},
    {0.37, -4.355602303015735, 12.484039698520426, 1.2782983743192873, -1.084757554874322, 3.6876826152961883, -7.990541513276384},
    {1.0, -3.448148297202459, 22.35605612381645, 0.5854097950489983, -0.5376506247482457, 2.49281859637108, -12.904328197175802},
    {5.0, 461.5793268454969, 709.6554634729509, 0.009673942570071894, -0.009464004766008356, -255.32170819308882, -392.56887858470407},
}};

inline constexpr std::array<SolutionSample, 4> solutions_nu095 {{
    {1e-06, 86.6970915897085, -62.764030561395, 43.40378595521563, -31.432235340251715, 0.015560725997805929, -0.021494283575015944},
    {0.37, 0.7134882775463911, 0.2470879235553902, 0.9725384694178524, -0.9061613190222416, 0.6154677820746995, -1.0298183677428199},
    {1.0, 0.1387275004779886, 1.6975146678052506, 0.4842512102111093, -0.46720698646928777, 0.41482396731453325, -1.3167412371128016},
    {5.0, 40.9130914316386, 64.00202975366899, 0.008483039840030106, -0.008405774518554867, -20.46678773695081, -32.03871303351004},
}};

// Confluent-hypergeometric samples at the channel parameters for nu = 0.9.
struct HypSample { double a, b, x, m, u; };

inline constexpr std::array<HypSample, 34> hyp_nu090 {{
    {-0.43588989435406733, 0.12822021129186528, 1e-08, 0.9999999660045876, 0.5375444504219374},
    {-0.43588989435406733, 0.12822021129186528, 0.001, 0.9965996086799711, 0.5413547032411741},
    {-0.43588989435406733, 0.12822021129186528, 0.1, 0.6513344786724689, 0.6699073281322913},
    {-0.43588989435406733, 0.12822021129186528, 0.5, -0.9411824979251407, 0.933065750100137},
    {-0.43588989435406733, 0.12822021129186528, 1.0, -3.5089152651226914, 1.1496218799218836},
    {-0.43588989435406733, 0.12822021129186528, 2.0, -11.875951639395014, 1.4639340394814682},
    {-0.43588989435406733, 0.12822021129186528, 5.0, -153.3889092464504, 2.088417689345885},
    {-0.43588989435406733, 0.12822021129186528, 8.0, -2137.2870514757633, 2.5316056932877067},
    {-0.43588989435406733, 0.12822021129186528, 12.0, -87897.99240731755, 2.999292167439055},
    {-0.43588989435406733, 0.12822021129186528, 15.0, -1528298.2732553096, 3.295922692325242},
    {-0.43588989435406733, 0.12822021129186528, 18.0, -27384133.861736193, 3.561436149774346},
    {-0.43588989435406733, 0.12822021129186528, 20.0, -189631419.54602125, 3.725067402194868},
    {-0.43588989435406733, 0.12822021129186528, 22.0, -1322076429.849306, 3.8798795672743482},
    {-0.43588989435406733, 0.12822021129186528, 25.0, -24580898506.456818, 4.0981277811843455},
    {-0.43588989435406733, 0.12822021129186528, 30.0, -3271514468479.7363, 4.431682555838733},
    {-0.43588989435406733, 0.12822021129186528, 40.0, -6.081180890144933e+16, 5.016024082757652},
    {-0.43588989435406733, 0.12822021129186528, 55.0, -1.6512655347318055e+23, 5.755637696386816},
    {0.5641101056459327, 1.1282202112918653, 1e-08, 1.000000005, 45.145622648578566},
    {0.5641101056459327, 1.1282202112918653, 0.001, 1.000500183784735, 7.085248321462039},
    {0.5641101056459327, 1.1282202112918653, 0.1, 1.0518886489328916, 2.161310558418961},
    {0.5641101056459327, 1.1282202112918653, 0.5, 1.302951054900384, 1.1721142713995745},
    {0.5641101056459327, 1.1282202112918653, 1.0, 1.7470342160418, 0.8620501772570824},
    {0.5641101056459327, 1.1282202112918653, 2.0, 3.3966524643312983, 0.6185577148588097},
    {0.5641101056459327, 1.1282202112918653, 5.0, 38.110014048733866, 0.3867896613259603},
    {0.5641101056459327, 1.1282202112918653, 8.0, 570.2841035790025, 0.3009941988050799},
    {0.5641101056459327, 1.1282202112918653, 12.0, 24431.951794335007, 0.241524988883032},
    {0.5641101056459327, 1.1282202112918653, 15.0, 430554.34945684974, 0.21372503037047955},
    {0.5641101056459327, 1.1282202112918653, 18.0, 7778110.495036272, 0.19330909171667074},
    {0.5641101056459327, 1.1282202112918653, 20.0, 54073109.508394524, 0.18238083370402963},
    {0.5641101056459327, 1.1282202112918653, 22.0, 378163628.9344271, 0.17301112704616112},
    {0.5641101056459327, 1.1282202112918653, 25.0, 7056752029.098488, 0.16117383216785353},
    {0.5641101056459327, 1.1282202112918653, 30.0, 943276574445.1516, 0.14564397607921564},
    {0.5641101056459327, 1.1282202112918653, 40.0, 1.7626147146055966e+16, 0.12406679645573745},
    {0.5641101056459327, 1.1282202112918653, 55.0, 4.806121731487767e+22, 0.10383320135883724},
}};

// Resolvent of the distinguished extension applied to v_inf (nu = 0.9).
struct SpinorSample { double r, up, lo; };

inline constexpr std::array<SpinorSample, 5> sdinv_vinf_nu090 {{
    {0.05, -1.3703317700525979, 1.962827244912831},
    {0.5, -1.8000926448626107, 2.4158269872962355},
    {1.0, -1.319528291172575, 1.7294018114768326},
    {2.0, -0.5778757062227572, 0.7393647660379691},
    {5.0, -0.035379880138206136, 0.04390986014632991},
}};

// Cumulative channel integrals at nu = 0.9:
//   i0(r) = int_0^r <v0, v_inf>,  iinf(r) = int_r^inf <v_inf, v_inf>.
struct CumulativeSample { double r, i0, iinf; };

inline constexpr std::array<CumulativeSample, 4> cumulative_nu090 {{
    {1e-08, 4.332961071304883e-08, 5.578766665502834},
    {0.001, 0.0043622379663113406, 4.063647186457891},
    {0.1, 0.5014043251976353, 2.174301646410191},
    {1.0, 4.444110662027962, 0.2791032109795291},
}};

// Green kernel samples (row-major 2x2) at nu = 0.9; the kernel is the
// integral kernel of the true resolvent (operator image of a column is +g).
struct KernelSample { double r, rho; std::array<double, 4> k; };

inline constexpr std::array<KernelSample, 2> kernel_nu090 {{
    {0.3, 1.7, {-0.18804452134721278, 0.17942332077457854, 0.3615682128107285, -0.3449915422382604}},
    {2.0, 2.0, {0.1527813625049019, -0.1466405418256619, 0.8533594581743381, -0.8190599381172771}},
}};

// Bound-state energies (1 + nu^2/(n + sqrt(kappa^2 - nu^2))^2)^{-1/2}
// for nu = -0.5, |kappa| = 1, n = 0..3.
inline constexpr std::array<double, 4> sommerfeld_nu_m05 {0.8660254037844386, 0.9659258262890683, 0.9851210547941827, 0.9917401207983119};

}  // namespace dclab::refvals
