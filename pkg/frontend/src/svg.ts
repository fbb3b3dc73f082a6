/** Scene serialization to standalone SVG markup (no timestamps, no ids). */

import type { Scene, SceneItem } from "./scene.js";

const fmt = (v: number): string => String(Math.round(v * 100) / 100);

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}

function itemToSvg(item: SceneItem): string {
  switch (item.kind) {
    case "rect":
      return (
        `<rect x="${fmt(item.x)}" y="${fmt(item.y)}" ` +
        `width="${fmt(item.w)}" height="${fmt(item.h)}" fill="${item.fill}"/>`
      );
    case "polyline": {
      const points = item.points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
      const dash = item.dash ? ` stroke-dasharray="${item.dash}"` : "";
      return (
        `<polyline points="${points}" fill="none" stroke="${item.color}" ` +
        `stroke-width="${fmt(item.width)}"${dash}/>`
      );
    }
    case "text": {
      const transform = item.rotate
        ? ` transform="rotate(-90 ${fmt(item.x)} ${fmt(item.y)})"`
        : "";
      return (
        `<text x="${fmt(item.x)}" y="${fmt(item.y)}" font-size="${item.size}" ` +
        `fill="${item.color}" text-anchor="${item.anchor}"` +
        `${transform} font-family="Helvetica, Arial, sans-serif">` +
        `${esc(item.text)}</text>`
      );
    }
  }
}

export function sceneToSvg(scene: Scene): string {
  const body = scene.items.map(itemToSvg).join("\n  ");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" ` +
    `height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}">\n` +
    `  <rect x="0" y="0" width="${scene.width}" height="${scene.height}" fill="#ffffff"/>\n` +
    `  ${body}\n</svg>\n`
  );
}
