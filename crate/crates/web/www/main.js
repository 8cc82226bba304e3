import init, { csc_curve, extremal_profile, se_lookup } from "./pkg/sasaki_join_web.js";

const pair = (s) => {
  const [a, b] = s.split(",").map((x) => parseInt(x.trim(), 10));
  if (!(a > 0 && b > 0)) throw new Error(`expected a pair like 21,5, got "${s}"`);
  return [a, b];
};

const field = (sec, name) => sec.querySelector(`[name=${name}]`).value;

// Signed log scale keeps the sign of f while taming its range.
const slog = (y) => Math.sign(y) * Math.log10(1 + Math.abs(y));

function plot(canvas, points, { scale = (y) => y, marks = [] } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: W, height: H } = canvas;
  ctx.clearRect(0, 0, W, H);
  const xs = points.map((p) => p[0]);
  const ys = points.map((p) => scale(p[1]));
  const [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(0, ...ys), Math.max(0, ...ys)];
  if (y0 === y1) y1 = y0 + 1;
  const px = (x) => 30 + ((x - x0) / (x1 - x0 || 1)) * (W - 40);
  const py = (y) => H - 15 - ((y - y0) / (y1 - y0)) * (H - 30);
  ctx.strokeStyle = "#aaa";
  ctx.beginPath();
  ctx.moveTo(px(x0), py(0));
  ctx.lineTo(px(x1), py(0));
  ctx.stroke();
  ctx.strokeStyle = "#1f5fa8";
  ctx.lineWidth = 2;
  ctx.beginPath();
  points.forEach((p, i) => (i ? ctx.lineTo : ctx.moveTo).call(ctx, px(p[0]), py(ys[i])));
  ctx.stroke();
  ctx.fillStyle = "#c0392b";
  for (const m of marks) {
    ctx.beginPath();
    ctx.arc(px(m), py(0), 5, 0, 2 * Math.PI);
    ctx.fill();
  }
  ctx.fillStyle = "#555";
  ctx.fillText(x0.toFixed(2), px(x0), H - 2);
  ctx.fillText(x1.toFixed(2), px(x1) - 25, H - 2);
}

function wire(id, action) {
  const sec = document.getElementById(id);
  const out = sec.querySelector("pre");
  const run = () => {
    out.classList.remove("err");
    try {
      out.textContent = action(sec);
    } catch (e) {
      out.classList.add("err");
      out.textContent = String(e.message ?? e);
    }
  };
  sec.querySelector("button").addEventListener("click", run);
  sec.querySelectorAll("input").forEach((i) => i.addEventListener("keydown", (e) => e.key === "Enter" && run()));
  run();
}

await init();

wire("csc", (sec) => {
  const [l0, li] = pair(field(sec, "l"));
  const [w0, wi] = pair(field(sec, "w"));
  const r = JSON.parse(csc_curve(+field(sec, "d"), field(sec, "a"), l0, li, w0, wi, +field(sec, "bmax"), 400));
  plot(sec.querySelector("canvas"), r.points, { scale: slog, marks: r.rays.map((x) => x.approx) });
  const rays = r.rays.map((x) => `  b = ${x.b}${x.v ? `  v = (${x.v})` : ""}${x.positive === null ? "" : `  positive: ${x.positive}`}`);
  return `l = (${r.l}), w = (${r.w})\nf(b) = ${r.f}\nCSC rays:\n${rays.join("\n") || "  none"}`;
});

wire("extremal", (sec) => {
  const [l0, li] = pair(field(sec, "l"));
  const [w0, wi] = pair(field(sec, "w"));
  const [v0, vi] = pair(field(sec, "v"));
  const r = JSON.parse(extremal_profile(+field(sec, "d"), field(sec, "a"), l0, li, w0, wi, v0, vi, 200));
  plot(sec.querySelector("canvas"), r.points);
  return `r = ${r.r}, n = ${r.n}, m = (${r.m})\nF(z) = ${r.F}\nScal = ${r.scal}  (alpha = ${r.alpha}, beta = ${r.beta})\nCSC: ${r.csc}, positive on (-1,1): ${r.positive}`;
});

wire("se", (sec) => {
  const [w0, wi] = pair(field(sec, "w"));
  const r = JSON.parse(se_lookup(+field(sec, "d"), +field(sec, "index"), w0, wi));
  const lines = [`P_w(k) = ${r.P_w}`, `k = ${r.k}  (≈ ${r.k_approx.toPrecision(12)})`, `b = ${r.b}`, `l = (${r.l})`];
  if (r.quasi_regular) lines.push(`v = (${r.v}), quotient Fano index ${r.fano_index}, order ${r.order}`);
  else lines.push("irregular ray");
  return lines.join("\n");
});
