// Generated by tests/oracle/make_goldens.py -- do not edit by hand.
// Reference values computed with 60-digit arithmetic and rounded to
// binary64; implementations are compared against them at 1e-12.
#pragma once

#include <cstddef>

namespace exadam::reference {

inline constexpr double kMCorrectedSpot = 1.9989900100998996;
inline constexpr double kVCorrectedSpot = 1.8999991000008984;
inline constexpr double kGAccelSteep = 1.904842651919999;
inline constexpr double kGAccelFlat = 1.9048336943302857;

// theta=0, g=1, alpha=0.001, default hyperparameters, step 1
inline constexpr double kFirstStepMCorrected = 1.998990010099899;
inline constexpr double kFirstStepVCorrected = 1.8999991000009;
inline constexpr double kFirstStepGAccel = 19.989900100998995;
inline constexpr double kFirstStepUpdate = -0.015952421204351808;

// Fixed stepping scenario: dim 4, cycling gradients, alpha=0.001.
inline constexpr std::size_t kScenarioDim = 4;
inline constexpr double kScenarioTheta0[] = {0.5, -1.0, 2.0, -0.25};
inline constexpr double kScenarioGradBase[] = {1.0, -0.5, 0.25, 2.0};
inline constexpr double kScenarioGradCycle[] = {1.0, -0.5, 2.0};
inline constexpr double kScenarioAlpha = 0.001;

struct ScenarioRecord {
  long long t;
  double m_corrected[kScenarioDim];
  double v_corrected[kScenarioDim];
  double g_accel[kScenarioDim];
  double update[kScenarioDim];
  double theta_after[kScenarioDim];
};

inline constexpr ScenarioRecord kScenarioRecords[] = {
    {1,
     {1.998990010099899, -0.999480020799168, 0.4997100463925772, 3.9979950050124873},
     {1.8999991000009, 0.4749991000036, 0.11874910001439977, 7.599999100000225},
     {19.989900100998995, -9.994800207991682, 4.997100463925773, 39.979950050124884},
     {-0.015952421204351808, 0.015952193267175764, -0.01595128188958352, -0.0159524782197613},
     {0.4840475787956482, -0.9840478067328242, 1.9840487181104165, -0.2659524782197613}},
    {2,
     {0.4206301072976113, -0.21031253046550277, 0.10515121947211685, 0.8412627378542814},
     {1.1309072921345769, 0.2827244507731729, 0.07067874065519911, 4.523638657802591},
     {-5.257876341220142, 2.628906630818785, -1.3143902434014607, -10.51578422317852},
     {0.004548672706253461, -0.004548637175367682, 0.004548495154252083, 0.004548681599932028},
     {0.48859625150190167, -0.9885964439081919, 1.9885972132646685, -0.26140379661982927}},
    {10,
     {1.772488310957708, -0.8862433625057486, 0.44312009532092506, 3.5449774148903046},
     {2.2597944689081286, 0.5649486042069226, 0.14123713803162694, 9.039177927712958},
     {3.0553944613449535, -1.527695863754783, 0.7638451980665878, 6.110790289610674},
     {-0.00321160586781419, 0.003211603009851491, -0.0032115916208320405, -0.00321160658764754},
     {0.4572664902808276, -0.957266738627911, 1.9572677313588094, -0.292733571874156}},
    {100,
     {1.6833870230990966, -0.8416934392762128, 0.4208465750915659, 3.366774118471545},
     {1.743159037253026, 0.4357897593128119, 0.10894743982775834, 6.972636149013883},
     {1.9048426878808251, -0.9524212621592577, 0.47621046751746704, 3.809685457542823},
     {-0.0027177639192469275, 0.0027177636652986102, -0.0027177626906754785, -0.0027177639878801798},
     {0.23565298453359684, -0.7356532822077139, 1.7356544689399265, -0.5143470903664294}},
};

}  // namespace exadam::reference
