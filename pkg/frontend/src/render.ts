/* Canvas painting: the engine's SVG snapshot is the single source of truth;
 * the page only rasterizes it (plus device-pixel scaling). */

const CURSOR_CSS: Record<string, string> = {
  move: "move",
  "size-ew": "ew-resize",
  "size-ns": "ns-resize",
  "size-nwse": "nwse-resize",
  "size-nesw": "nesw-resize",
  default: "default",
};

export function cursorToCss(cursor: string): string {
  return CURSOR_CSS[cursor] ?? "default";
}

export function drawSvg(canvas: HTMLCanvasElement, svg: string): Promise<void> {
  return new Promise((resolve, reject) => {
    const img = new Image();
    const url = URL.createObjectURL(new Blob([svg], { type: "image/svg+xml" }));
    img.onload = () => {
      const ctx = canvas.getContext("2d");
      if (ctx) {
        ctx.clearRect(0, 0, canvas.width, canvas.height);
        ctx.drawImage(img, 0, 0);
      }
      URL.revokeObjectURL(url);
      resolve();
    };
    img.onerror = () => {
      URL.revokeObjectURL(url);
      reject(new Error("could not rasterize the scene snapshot"));
    };
    img.src = url;
  });
}
