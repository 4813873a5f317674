// Generated by tests/oracles/ml_oracle.py (mpmath, 45 digits). Do not edit.
#pragma once
namespace oracle {
struct MLCase { double alpha, beta, z, value; };
inline constexpr MLCase kMLCases[] = {
  {0.1, 1.0, -0.001, 0.99894995100519270522},
  {0.1, 1.0, -0.5, 0.6543244602880019291},
  {0.1, 1.0, -1.7, 0.35650771818315531512},
  {0.1, 1.0, -3, 0.2385593497825385582},
  {0.1, 1.0, -7.5, 0.11113584133257473954},
  {0.1, 1.0, -20, 0.044733864007450960005},
  {0.1, 1.0, -80, 0.011564513533121727908},
  {0.1, 1.0, -400, 0.0023340904569735994686},
  {0.1, 1.0, -3000, 0.00031183083138213305567},
  {0.1, 1.0, -10000, 0.000093569283491411069654},
  {0.1, 0.1, -0.001, 0.10489620954945799733},
  {0.1, 0.1, -0.5, 0.045397940282298665648},
  {0.1, 0.1, -1.7, 0.013547918241490263475},
  {0.1, 0.1, -3, 0.0060745407799221391676},
  {0.1, 0.1, -7.5, 0.0013195352848398861178},
  {0.1, 0.1, -20, 0.00021383599031220907159},
  {0.1, 0.1, -80, 0.000014291581788613357205},
  {0.1, 0.1, -400, 5.8218652415144740612e-7},
  {0.1, 0.1, -3000, 1.0391181699203743122e-8},
  {0.1, 0.1, -10000, 9.3560695661783761786e-10},
  {0.1, 1.1, -0.001, 1.0500489948072947816},
  {0.1, 1.1, -0.5, 0.69135107942399614179},
  {0.1, 1.1, -1.7, 0.3785248716569674617},
  {0.1, 1.1, -3, 0.25381355007248714727},
  {0.1, 1.1, -7.5, 0.11851522115565670139},
  {0.1, 1.1, -20, 0.047763306799627452},
  {0.1, 1.1, -80, 0.012355443580835978401},
  {0.1, 1.1, -400, 0.0024941647738575660013},
  {0.1, 1.1, -3000, 0.00033322938972287262231},
  {0.1, 1.1, -10000, 0.000099990643071650858893},
  {0.3, 1.0, -0.001, 0.99888687562755948596},
  {0.3, 1.0, -0.5, 0.63264900594359902138},
  {0.3, 1.0, -1.7, 0.32617841793234617701},
  {0.3, 1.0, -3, 0.21180263319643578039},
  {0.3, 1.0, -7.5, 0.094995693498016270041},
  {0.3, 1.0, -20, 0.037406226213884452596},
  {0.3, 1.0, -80, 0.0095595579260138061511},
  {0.3, 1.0, -400, 0.001923141957505961727},
  {0.3, 1.0, -3000, 0.00025674430693972009252},
  {0.3, 1.0, -10000, 0.000077033810249795532305},
  {0.3, 0.3, -0.001, 0.33360218228247227888},
  {0.3, 0.3, -0.5, 0.14375650014722127361},
  {0.3, 0.3, -1.7, 0.04029023738914400317},
  {0.3, 0.3, -3, 0.017243316421744134765},
  {0.3, 0.3, -7.5, 0.0035039929745997480631},
  {0.3, 0.3, -20, 0.00054462489804465209259},
  {0.3, 0.3, -80, 0.000035585773073870960018},
  {0.3, 0.3, -400, 1.4402457083141227198e-6},
  {0.3, 0.3, -3000, 2.56694223154589724e-8},
  {0.3, 0.3, -10000, 2.3108790665424754306e-9},
  {0.3, 1.3, -0.001, 1.1131243724405140445},
  {0.3, 1.3, -0.5, 0.73470198811280195724},
  {0.3, 1.3, -1.7, 0.39636563651038460176},
  {0.3, 1.3, -3, 0.2627324556011880732},
  {0.3, 1.3, -7.5, 0.12066724086693116399},
  {0.3, 1.3, -20, 0.04812968868930577737},
  {0.3, 1.3, -80, 0.012380505525924827423},
  {0.3, 1.3, -400, 0.0024951921451062350957},
  {0.3, 1.3, -3000, 0.00033324775189768675997},
  {0.3, 1.3, -10000, 0.000099992296618975020447},
  {0.5, 1.0, -0.001, 0.99887262008115140863},
  {0.5, 1.0, -0.5, 0.61569034419292587487},
  {0.5, 1.0, -1.7, 0.29166329707534346645},
  {0.5, 1.0, -3, 0.17900115118138995042},
  {0.5, 1.0, -7.5, 0.074573693062876683005},
  {0.5, 1.0, -20, 0.028174348741051319319},
  {0.5, 1.0, -80, 0.0070518189570391030171},
  {0.5, 1.0, -400, 0.0014104695511795910841},
  {0.5, 1.0, -3000, 0.00018806318406796525276},
  {0.5, 1.0, -10000, 0.000056418958072680841152},
  {0.5, 0.5, -0.001, 0.56319071092767513554},
  {0.5, 0.5, -0.5, 0.25634441145129334951},
  {0.5, 0.5, -1.7, 0.068361978519672393975},
  {0.5, 0.5, -3, 0.02718613000358643569},
  {0.5, 0.5, -7.5, 0.0048868855761811644096},
  {0.5, 0.5, -20, 0.0007026087267299005751},
  {0.5, 0.5, -80, 0.000044066984628045579482},
  {0.5, 0.5, -400, 1.763075919853292742e-6},
  {0.5, 0.5, -3000, 3.1343860528676952715e-8},
  {0.5, 0.5, -10000, 2.8209478754245637265e-9},
  {0.5, 1.5, -0.001, 1.1273799188485913721},
  {0.5, 1.5, -0.5, 0.76861931161414825026},
  {0.5, 1.5, -1.7, 0.41666864877920972561},
  {0.5, 1.5, -3, 0.27366628293953668319},
  {0.5, 1.5, -7.5, 0.12339017425828310893},
  {0.5, 1.5, -20, 0.048591282562947434034},
  {0.5, 1.5, -80, 0.012411852263037011212},
  {0.5, 1.5, -400, 0.0024964738261220510223},
  {0.5, 1.5, -3000, 0.00033327064560531067825},
  {0.5, 1.5, -10000, 0.000099994358104192731916},
  {0.6, 1.0, -0.001, 0.99888173205346531997},
  {0.6, 1.0, -0.5, 0.60947582195620002044},
  {0.6, 1.0, -1.7, 0.2724762846695187756},
  {0.6, 1.0, -3, 0.15970348026509121615},
  {0.6, 1.0, -7.5, 0.062638906158043224147},
  {0.6, 1.0, -20, 0.022946564273258375197},
  {0.6, 1.0, -80, 0.0056617947440269106273},
  {0.6, 1.0, -400, 0.0011281314317601101776},
  {0.6, 1.0, -3000, 0.0001502938140954066464},
  {0.6, 1.0, -10000, 0.000045084137619182044076},
  {0.6, 0.6, -0.001, 0.67041692088774557096},
  {0.6, 0.6, -0.5, 0.31922307382676062617},
  {0.6, 0.6, -1.7, 0.083951001274274672479},
  {0.6, 0.6, -3, 0.0316939265615570275},
  {0.6, 0.6, -7.5, 0.0051635894144771513464},
  {0.6, 0.6, -20, 0.00069976531797853913557},
  {0.6, 0.6, -80, 0.000042659462270860822742},
  {0.6, 0.6, -400, 1.6937994200188511811e-6},
  {0.6, 0.6, -3000, 3.0062577732530792138e-8},
  {0.6, 0.6, -10000, 2.7051513086752719505e-9},
  {0.6, 1.6, -0.001, 1.1182679465346800316},
  {0.6, 1.6, -0.5, 0.78104835608759995913},
  {0.6, 1.6, -1.7, 0.42795512666498895553},
  {0.6, 1.6, -3, 0.28009883991163626128},
  {0.6, 1.6, -7.5, 0.12498147917892757011},
  {0.6, 1.6, -20, 0.04885267178633708124},
  {0.6, 1.6, -80, 0.012429227565699663617},
  {0.6, 1.6, -400, 0.0024971796714205997246},
  {0.6, 1.6, -3000, 0.00033328323539530153112},
  {0.6, 1.6, -10000, 0.000099995491586238081796},
  {0.9, 1.0, -0.001, 0.99896084210999752737},
  {0.9, 1.0, -0.5, 0.60340549869586096762},
  {0.9, 1.0, -1.7, 0.20642354058778176193},
  {0.9, 1.0, -3, 0.08388835403377326904},
  {0.9, 1.0, -7.5, 0.018662932471857279635},
  {0.9, 1.0, -20, 0.0057495078161091138828},
  {0.9, 1.0, -80, 0.0013419549472801534916},
  {0.9, 1.0, -400, 0.00026387963565325516612},
  {0.9, 1.0, -3000, 0.000035057277162325229711},
  {0.9, 1.0, -10000, 0.000010513113058088609723},
  {0.9, 0.9, -0.001, 0.93470569675072222593},
  {0.9, 0.9, -0.5, 0.53190235156843732495},
  {0.9, 0.9, -1.7, 0.14886557308898028642},
  {0.9, 0.9, -3, 0.0441512717830377251},
  {0.9, 0.9, -7.5, 0.0030855812383730366781},
  {0.9, 0.9, -20, 0.00028402595741192644328},
  {0.9, 0.9, -80, 0.000015421771271183064082},
  {0.9, 0.9, -400, 5.9620797938551097575e-7},
  {0.9, 0.9, -3000, 1.0523000664454950718e-8},
  {0.9, 0.9, -10000, 9.463370807762261542e-10},
  {0.9, 1.9, -0.001, 1.0391578900024726251},
  {0.9, 1.9, -0.5, 0.79318900260827806477},
  {0.9, 1.9, -1.7, 0.46680968200718719886},
  {0.9, 1.9, -3, 0.30537054865540891032},
  {0.9, 1.9, -7.5, 0.13084494233708569605},
  {0.9, 1.9, -20, 0.049712524609194544306},
  {0.9, 1.9, -80, 0.012483225563158998081},
  {0.9, 1.9, -400, 0.0024993403009108668621},
  {0.9, 1.9, -3000, 0.00033332164757427922492},
  {0.9, 1.9, -10000, 0.000099998948688694191139},
  {0.99, 1.0, -0.001, 0.99899630475754702639},
  {0.99, 1.0, -0.5, 0.60608995263141647835},
  {0.99, 1.0, -1.7, 0.18504354570103659754},
  {0.99, 1.0, -3, 0.05345186750619962362},
  {0.99, 1.0, -7.5, 0.0024664680868175315007},
  {0.99, 1.0, -20, 0.00056162348367495244904},
  {0.99, 1.0, -80, 0.00012893012976322324945},
  {0.99, 1.0, -400, 0.000025267464934691235542},
  {0.99, 1.0, -3000, 3.354559603260365324e-6},
  {0.99, 1.0, -10000, 1.0059047980128711438e-6},
  {0.99, 0.99, -0.001, 0.99315445206772172784},
  {0.99, 0.99, -0.5, 0.59910754973579932754},
  {0.99, 0.99, -1.7, 0.17889463465253122544},
  {0.99, 0.99, -3, 0.049100971877477643486},
  {0.99, 0.99, -7.5, 0.00087990262814404771976},
  {0.99, 0.99, -20, 0.00003130100920891222507},
  {0.99, 0.99, -80, 1.6368786986130619644e-6},
  {0.99, 0.99, -400, 6.284815884313207611e-8},
  {0.99, 0.99, -3000, 1.1077328710432583953e-9},
  {0.99, 0.99, -10000, 9.9604209459816572082e-11},
  {0.99, 1.99, -0.001, 1.0036952424529736114},
  {0.99, 1.99, -0.5, 0.78782009473716704329},
  {0.99, 1.99, -1.7, 0.47938614958762553086},
  {0.99, 1.99, -3, 0.31551604416460012546},
  {0.99, 1.99, -7.5, 0.13300447092175766247},
  {0.99, 1.99, -20, 0.049971918825816252378},
  {0.99, 1.99, -80, 0.012498388373377959709},
  {0.99, 1.99, -400, 0.0024999368313376632719},
  {0.99, 1.99, -3000, 0.00033333221514679891321},
  {0.99, 1.99, -10000, 0.000099999899409520198713},
};
inline constexpr double kMl_03_03_m1 = 0.077316799030089675954;
inline constexpr double kHSymbol_2pi2_3_03 = 0.027476742613259585972;
inline constexpr double kKSymbol_5pi2_15_06 = 0.00006908840381293222395;
inline constexpr double kEWeight_pi2_05_1_03 = 0.0015976918891836730304;
inline constexpr double kMlHalf_m3 = 0.17900115118138995042;
}  // namespace oracle
