// Templated D2Q9 collide+force body, instantiated once per lane type. The
// lane L provides value/width/load/store/set1/max/hmax/hsum; arithmetic on
// L::value must be IEEE double per element so every instantiation produces
// bitwise-identical populations.
//
// Per cell: rho and momentum from f, half-force corrected velocity, the
// porosity-controlled equilibrium f_i^eq(rho, varpi*u), Guo forcing, BGK
// relaxation. The rest population takes the mass complement of the moving
// ones so collision conserves sum_i f_i exactly.

template <class L>
CollideStats collide_range_impl(const CollideArgs& a) {
  using V = typename L::value;
  const V zero = L::set1(0.0);
  const V one = L::set1(1.0);
  const V half = L::set1(0.5);
  const V three = L::set1(3.0);
  const V nine = L::set1(9.0);
  const V onefive = L::set1(1.5);
  const V w_rest = L::set1(4.0 / 9.0);
  const V w_axis = L::set1(1.0 / 9.0);
  const V w_diag = L::set1(1.0 / 36.0);
  const V inv_tau = L::set1(a.inv_tau);
  const V gpref = L::set1(a.guo_pref);
  const V uni_ax = L::set1(a.ax);
  const V uni_ay = L::set1(a.ay);

  V vmax = zero;
  V vsum = zero;

  for (std::size_t i = a.begin; i + L::width <= a.end; i += L::width) {
    const V f0 = L::load(a.f[0] + i);
    const V f1 = L::load(a.f[1] + i);
    const V f2 = L::load(a.f[2] + i);
    const V f3 = L::load(a.f[3] + i);
    const V f4 = L::load(a.f[4] + i);
    const V f5 = L::load(a.f[5] + i);
    const V f6 = L::load(a.f[6] + i);
    const V f7 = L::load(a.f[7] + i);
    const V f8 = L::load(a.f[8] + i);

    const V rho = ((((((((f0 + f1) + f2) + f3) + f4) + f5) + f6) + f7) + f8);
    const V momx = ((((f1 - f3) + f5) - f6) - f7) + f8;
    const V momy = ((((f2 - f4) + f5) + f6) - f7) - f8;

    const V ax = a.ax_field ? L::load(a.ax_field + i) : uni_ax;
    const V ay = a.ay_field ? L::load(a.ay_field + i) : uni_ay;

    const V inv_rho = one / rho;
    const V ux = momx * inv_rho + half * ax;
    const V uy = momy * inv_rho + half * ay;
    vmax = L::max(vmax, ux * ux + uy * uy);
    vsum = vsum + rho;

    const V w = L::load(a.varpi + i);
    const V ex = w * ux;
    const V ey = w * uy;
    const V esq = onefive * (ex * ex + ey * ey);
    const V tx = three * ex;
    const V ty = three * ey;
    const V txy = tx + ty;
    const V tyx = ty - tx;

    const V feq1 = w_axis * rho * ((one + tx) + half * tx * tx - esq);
    const V feq3 = w_axis * rho * ((one - tx) + half * tx * tx - esq);
    const V feq2 = w_axis * rho * ((one + ty) + half * ty * ty - esq);
    const V feq4 = w_axis * rho * ((one - ty) + half * ty * ty - esq);
    const V feq5 = w_diag * rho * ((one + txy) + half * txy * txy - esq);
    const V feq7 = w_diag * rho * ((one - txy) + half * txy * txy - esq);
    const V feq6 = w_diag * rho * ((one + tyx) + half * tyx * tyx - esq);
    const V feq8 = w_diag * rho * ((one - tyx) + half * tyx * tyx - esq);
    const V feq0 = rho - (((feq1 + feq2) + (feq3 + feq4)) + ((feq5 + feq6) + (feq7 + feq8)));

    const V gx = rho * ax;
    const V gy = rho * ay;
    const V fdot = ux * gx + uy * gy;
    const V gxy = gx + gy;
    const V gyx = gy - gx;
    const V uxy = ux + uy;
    const V uyx = uy - ux;

    const V s0 = w_rest * gpref * (three * (zero - fdot));
    const V s1 = w_axis * gpref * (three * (gx - fdot) + nine * (ux * gx));
    const V s3 = w_axis * gpref * (three * (zero - gx - fdot) + nine * (ux * gx));
    const V s2 = w_axis * gpref * (three * (gy - fdot) + nine * (uy * gy));
    const V s4 = w_axis * gpref * (three * (zero - gy - fdot) + nine * (uy * gy));
    const V s5 = w_diag * gpref * (three * (gxy - fdot) + nine * (uxy * gxy));
    const V s7 = w_diag * gpref * (three * (zero - gxy - fdot) + nine * (uxy * gxy));
    const V s6 = w_diag * gpref * (three * (gyx - fdot) + nine * (uyx * gyx));
    const V s8 = w_diag * gpref * (three * (zero - gyx - fdot) + nine * (uyx * gyx));

    L::store(a.fpost[0] + i, f0 - inv_tau * (f0 - feq0) + s0);
    L::store(a.fpost[1] + i, f1 - inv_tau * (f1 - feq1) + s1);
    L::store(a.fpost[2] + i, f2 - inv_tau * (f2 - feq2) + s2);
    L::store(a.fpost[3] + i, f3 - inv_tau * (f3 - feq3) + s3);
    L::store(a.fpost[4] + i, f4 - inv_tau * (f4 - feq4) + s4);
    L::store(a.fpost[5] + i, f5 - inv_tau * (f5 - feq5) + s5);
    L::store(a.fpost[6] + i, f6 - inv_tau * (f6 - feq6) + s6);
    L::store(a.fpost[7] + i, f7 - inv_tau * (f7 - feq7) + s7);
    L::store(a.fpost[8] + i, f8 - inv_tau * (f8 - feq8) + s8);
  }

  CollideStats s;
  s.max_u2 = L::hmax(vmax);
  s.rho_sum = L::hsum(vsum);
  return s;
}
