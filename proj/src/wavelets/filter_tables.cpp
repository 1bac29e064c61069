// Generated by tools/gen_filters.py. Do not edit by hand.

#include "wrnn/wavelets/filter_bank.hpp"

namespace wrnn::wavelets::detail {

const std::vector<double> k_haar_lo = {
    7.0710678118654752440e-1,
    7.0710678118654752440e-1,
};

const std::vector<double> k_bior2_8_lo = {
    1.5105430506304420992e-3,
    -3.0210861012608841985e-3,
    -1.2947511862546646565e-2,
    2.8916109826354177328e-2,
    5.2998481890690939939e-2,
    -1.3491307360773605721e-1,
    -1.6382918343409023454e-1,
    4.6257144047591652628e-1,
    9.5164212189717852252e-1,
    4.6257144047591652628e-1,
    -1.6382918343409023454e-1,
    -1.3491307360773605721e-1,
    5.2998481890690939939e-2,
    2.8916109826354177328e-2,
    -1.2947511862546646565e-2,
    -3.0210861012608841985e-3,
    1.5105430506304420992e-3,
    0.0,
};
const std::vector<double> k_bior2_8_dual_lo = {
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    3.5355339059327376220e-1,
    7.0710678118654752440e-1,
    3.5355339059327376220e-1,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
};

const std::vector<double> k_bior3_7_lo = {
    3.0210861012608841985e-3,
    -9.0632583037826525955e-3,
    -1.6831765421310640534e-2,
    7.4663985074018995191e-2,
    3.1332978707362884687e-2,
    -3.0115912592283499910e-1,
    -2.6499240945345469970e-2,
    9.5164212189717852252e-1,
    9.5164212189717852252e-1,
    -2.6499240945345469970e-2,
    -3.0115912592283499910e-1,
    3.1332978707362884687e-2,
    7.4663985074018995191e-2,
    -1.6831765421310640534e-2,
    -9.0632583037826525955e-3,
    3.0210861012608841985e-3,
};
const std::vector<double> k_bior3_7_dual_lo = {
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    1.7677669529663688110e-1,
    5.3033008588991064330e-1,
    5.3033008588991064330e-1,
    1.7677669529663688110e-1,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
};

const std::vector<double> k_bior3_9_lo = {
    -6.7974437278369894466e-4,
    2.0392331183510968340e-3,
    5.0603192196119810325e-3,
    -2.0618912641105534655e-2,
    -1.4112787930175844756e-2,
    9.9134782494232157199e-2,
    1.2300136269419314237e-2,
    -3.2019196836077856955e-1,
    2.0500227115698857061e-3,
    9.4212570067820673730e-1,
    9.4212570067820673730e-1,
    2.0500227115698857061e-3,
    -3.2019196836077856955e-1,
    1.2300136269419314237e-2,
    9.9134782494232157199e-2,
    -1.4112787930175844756e-2,
    -2.0618912641105534655e-2,
    5.0603192196119810325e-3,
    2.0392331183510968340e-3,
    -6.7974437278369894466e-4,
};
const std::vector<double> k_bior3_9_dual_lo = {
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    1.7677669529663688110e-1,
    5.3033008588991064330e-1,
    5.3033008588991064330e-1,
    1.7677669529663688110e-1,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
    0.0,
};

const std::vector<double> k_coif2_lo = {
    1.6387336463203640427e-2,
    -4.1464936786871774010e-2,
    -6.7372554723725593805e-2,
    3.8611006682276285042e-1,
    8.1272363544941349534e-1,
    4.1700518442323904805e-1,
    -7.6488599078280754278e-2,
    -5.9434418646431087307e-2,
    2.3680171946847768806e-2,
    5.6114348193688342456e-3,
    -1.8232088709110320946e-3,
    -7.2054944552034699507e-4,
};

const std::vector<double> k_db4_lo = {
    2.3037781330889650086e-1,
    7.1484657055291564709e-1,
    6.3088076792985890788e-1,
    -2.7983769416859854211e-2,
    -1.8703481171909308408e-1,
    3.0841381835560763627e-2,
    3.2883011666885199735e-2,
    -1.0597401785069032105e-2,
};

const std::vector<double> k_db6_lo = {
    1.1154074335010946362e-1,
    4.9462389039845308568e-1,
    7.5113390802109535068e-1,
    3.1525035170919762909e-1,
    -2.2626469396543982008e-1,
    -1.2976686756726193556e-1,
    9.7501605587323049102e-2,
    2.7522865530305728626e-2,
    -3.1582039317486029565e-2,
    5.5384220116149613925e-4,
    4.7772575109455106396e-3,
    -1.0773010853084795649e-3,
};

const std::vector<double> k_db8_lo = {
    5.4415842243104009955e-2,
    3.1287159091429997066e-1,
    6.7563073629728980681e-1,
    5.8535468365420671277e-1,
    -1.5829105256349305667e-2,
    -2.8401554296154692652e-1,
    4.7248457391328277036e-4,
    1.2874742662047845886e-1,
    -1.7369301001807546170e-2,
    -4.4088253930794751507e-2,
    1.3981027917398281649e-2,
    8.7460940474057767164e-3,
    -4.8703529934515743104e-3,
    -3.9174037337694704630e-4,
    6.7544940645056936637e-4,
    -1.1747678412476953373e-4,
};

const std::vector<double> k_sym4_lo = {
    3.2223100604051467872e-2,
    -1.2603967262031303754e-2,
    -9.9219543576633532585e-2,
    2.9785779560530605140e-1,
    8.0373875180513208088e-1,
    4.9761866763277498998e-1,
    -2.9635527646002491764e-2,
    -7.5765714789502213228e-2,
};

const std::vector<double> k_sym7_lo = {
    1.0268176708464816231e-2,
    4.0102448715223951678e-3,
    -1.0780823770328971255e-1,
    -1.4004724044293365414e-1,
    2.8862963175064787470e-1,
    7.6776431700488293117e-1,
    5.3610191709056923066e-1,
    1.7441255086835706851e-2,
    -4.9552834937042832301e-2,
    6.7892693501220564905e-2,
    3.0515513165877885745e-2,
    -1.2636303403240566583e-2,
    -1.0473848886797380865e-3,
    2.6818145682601470291e-3,
};

}  // namespace wrnn::wavelets::detail
