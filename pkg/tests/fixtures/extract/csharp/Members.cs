namespace App
{
    public struct Pair
    {
        public int A;
        public int B;

        /// <summary>Sum of both fields.</summary>
        public int Sum()
        {
            return A + B;
        }
    }

    public interface IShape
    {
        double Area();
    }

    public record Point(double X, double Y)
    {
        /// <summary>Distance from origin.</summary>
        public double Norm()
        {
            return Math.Sqrt(X * X + Y * Y);
        }
    }
}
