import init, { signCurve, zeroCount, conjectureScan, version } from "./pkg/lplab_demo.js";

const $ = (id) => document.getElementById(id);

function fail(el, e) {
  el.innerHTML = "";
  const span = document.createElement("span");
  span.className = "err";
  span.textContent = String(e);
  el.appendChild(span);
}

function verdictHtml(v) {
  const cls = v === "InLP" ? "in" : v === "NotInLP" ? "not" : "";
  return `<span class="${cls}">${v}</span>`;
}

// Line plot of (x, y) pairs with a y = 0 axis and an optional marker.
function plot(canvas, xs, ys, marker) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width, h = canvas.height, pad = 40;
  ctx.clearRect(0, 0, w, h);
  const x0 = Math.min(...xs), x1 = Math.max(...xs);
  let y0 = Math.min(0, ...ys), y1 = Math.max(0, ...ys);
  if (y1 - y0 < 1e-300) { y0 -= 1; y1 += 1; }
  const sx = (x) => pad + (w - 2 * pad) * (x - x0) / (x1 - x0 || 1);
  const sy = (y) => h - pad - (h - 2 * pad) * (y - y0) / (y1 - y0);

  ctx.strokeStyle = "#bbb";
  ctx.beginPath();
  ctx.moveTo(pad, sy(0));
  ctx.lineTo(w - pad, sy(0));
  ctx.stroke();

  ctx.fillStyle = "#555";
  ctx.font = "12px sans-serif";
  ctx.fillText(x0.toPrecision(5), pad, h - pad + 16);
  ctx.fillText(x1.toPrecision(5), w - pad - 40, h - pad + 16);
  ctx.fillText(y1.toPrecision(3), 2, pad);
  ctx.fillText(y0.toPrecision(3), 2, h - pad);

  ctx.strokeStyle = "#2060c0";
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  xs.forEach((x, i) => (i ? ctx.lineTo(sx(x), sy(ys[i])) : ctx.moveTo(sx(x), sy(ys[i]))));
  ctx.stroke();

  if (marker) {
    ctx.fillStyle = "#c03020";
    ctx.beginPath();
    ctx.arc(sx(marker[0]), sy(marker[1]), 4, 0, 2 * Math.PI);
    ctx.fill();
  }
}

function drawCurve() {
  const out = $("curve-out");
  const a = Number($("curve-a-num").value);
  try {
    const r = JSON.parse(signCurve($("curve-family").value, a, 600));
    const xs = r.points.map((p) => p.x), ys = r.points.map((p) => p.value);
    const marker = r.witness_x != null ? [r.witness_x, r.witness_value] : null;
    plot($("curve-canvas"), xs, ys, marker);
    out.innerHTML =
      `a = ${r.a}  interval (${r.x_lo.toPrecision(6)}, ${r.x_hi.toPrecision(6)})\n` +
      `min ${r.witness_value?.toExponential(6)} at x = ${r.witness_x?.toPrecision(8)}` +
      `  (error bound ${r.error_bound.toExponential(2)})\nverdict: ${verdictHtml(r.verdict)}`;
  } catch (e) {
    fail(out, e);
  }
}

function countZeros() {
  const out = $("zeros-out");
  try {
    const r = JSON.parse(zeroCount(Number($("zeros-a").value), Number($("zeros-j").value)));
    out.textContent =
      `ρ_${r.j} = ${r.radius_u.toPrecision(8)}  (|z| < ${r.radius_z.toPrecision(8)})\n` +
      `winding count: ${r.count}${r.certified ? " (certified" : " (not certified"}, ${r.samples_used} samples)\n` +
      `section of degree ${r.j + 8}: ${r.section_count} roots inside`;
  } catch (e) {
    fail(out, e);
  }
}

function runScan() {
  const out = $("scan-out");
  try {
    const lo = Number($("scan-lo").value), hi = Number($("scan-hi").value);
    const r = JSON.parse(conjectureScan(lo, hi, Number($("scan-steps").value)));
    plot($("scan-canvas"), r.rows.map((p) => p.a), r.rows.map((p) => p.min_value));
    const first = r.rows.find((p) => p.verdict === "InLP");
    out.innerHTML =
      `${r.rows.length} values of a, ${r.transitions} verdict change(s), monotone: ${r.monotone}\n` +
      (first ? `first member on the grid: a = ${first.a.toPrecision(8)}` : "no member on the grid");
  } catch (e) {
    fail(out, e);
  }
}

await init();
$("version").textContent = version();

$("curve-a").addEventListener("input", () => {
  $("curve-a-num").value = $("curve-a").value;
  drawCurve();
});
$("curve-a-num").addEventListener("change", () => {
  $("curve-a").value = $("curve-a-num").value;
  drawCurve();
});
$("curve-family").addEventListener("change", drawCurve);
$("zeros-run").addEventListener("click", countZeros);
$("scan-run").addEventListener("click", runScan);

drawCurve();
countZeros();
runScan();
