// Generated by tests/oracle/derive.py; do not edit by hand.
#pragma once

namespace oracle {

inline constexpr double kThetaGaussian = 1.086434811213308014575316;
inline constexpr double kThetaDilated2 = 2.000013949369424835982559;
inline constexpr double kGammaFactor1 = 1.0;
inline constexpr double kGammaFactor2 = 0.3183098861837906715377675;
inline constexpr double kGammaFactor3 = 0.1591549430918953357688838;
inline constexpr double kZeta2 = 1.644934066848226436472415;
inline constexpr double kZeta3 = 1.202056903159594285399738;
inline constexpr double kZeta1p5 = 2.612375348685488343348568;
inline constexpr double kHurwitzRegular1Half = 1.963510026021423479440976;
inline constexpr double kHurwitzRegular1Third = 3.132033780020806322996419;
inline constexpr double kHurwitzRegular2Quarter = 16.19732915450711073927132;
inline constexpr double kLMinus4At1 = 0.7853981633974483096156608;
inline constexpr double kLMinus3At1 = 0.6045997880780726168646928;
inline constexpr double kL5At1 = 0.4304089409640040388894332;
inline constexpr double kL8At1 = 0.6232252401402305133940201;
inline constexpr double kLMinus4At2 = 0.9159655941772190150546035;
inline constexpr double kLMinus8At3 = 1.027722585936858567879257;
inline constexpr double kL12At2 = 0.9497031262940093952634985;
inline constexpr double kRealWeightAt1 = -0.3465735902799726547086161;
inline constexpr double kRealWeightAt3 = -1.151292546497022842008996;
inline constexpr double kSplitOrbitalGaussian = 0.008657098604107409835953171;
inline constexpr double kSplitOrbitalGaussianWide = 0.6183637059975300310385957;

}  // namespace oracle
